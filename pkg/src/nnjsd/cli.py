"""Command-line entry point ``jsd``.

Exit codes: 0 success, 2 validation error, 3 generation infeasible, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import experiments as ex
from .core import WeightedPair, jsd_auto, jsd_exact_reduced, jsd_naive, jsd_series, series_coefficients
from .errors import InfeasibleSpecError, InsufficientDataError, ValidationError
from .io import read_distribution, write_distribution
from .pairgen import GenSpec, sample_pair

EXIT_OK, EXIT_VALIDATION, EXIT_INFEASIBLE, EXIT_IO = 0, 2, 3, 4


def _orders(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return lo, hi


def _cmd_compute(args) -> int:
    pair = WeightedPair(read_distribution(args.p1), read_distribution(args.p2), args.pi1, normalize=args.normalize)
    if args.method == "naive":
        res = jsd_naive(pair, args.units)
    elif args.method == "exact":
        res = jsd_exact_reduced(pair, args.units)
    elif args.method == "series":
        res = jsd_series(pair, args.order, args.units)
    else:
        res = jsd_auto(pair, args.rel_tol, args.units)
    print(f"value: {res.value!r}")
    print(f"units: {res.units}")
    print(f"method: {res.method}" + (" (auto)" if res.auto_selected else ""))
    if res.order is not None:
        print(f"order: {res.order}")
    flags = [name for name, on in vars(res.diagnostics).items() if on]
    if flags:
        print(f"flags: {','.join(flags)}")
    return EXIT_OK


def _cmd_coeffs(args) -> int:
    for b in series_coefficients(args.alpha, args.order).b:
        print(repr(float(b)))
    return EXIT_OK


def _cmd_gen(args) -> int:
    gen = sample_pair(GenSpec(args.n, args.log10_eps, args.alpha, args.seed))
    write_distribution(f"{args.out}.p1", gen.pair.p1)
    write_distribution(f"{args.out}.p2", gen.pair.p2)
    meta = {
        "n": args.n,
        "target_log10_eps": args.log10_eps,
        "achieved_eps_norm": gen.eps_norm,
        "achieved_log10_eps": gen.log10_eps_norm,
        "alpha": args.alpha,
        "pi1": gen.pair.pi1,
        "seed": args.seed,
    }
    with open(f"{args.out}.meta", "w", encoding="utf-8") as fh:
        fh.write(json.dumps(meta, sort_keys=True) + "\n")
    print(f"wrote {args.out}.p1 {args.out}.p2 {args.out}.meta (log10 ||eps|| = {gen.log10_eps_norm:.4f})")
    return EXIT_OK


def _cmd_sweep_accuracy(args) -> int:
    cfg = ex.AccuracyConfig(
        n=args.n, trials=args.trials, orders=args.orders, eps_range=args.eps_range, alpha=args.alpha, seed=args.seed
    )
    records = ex.run_accuracy_sweep(cfg, jobs=args.jobs)
    ex.emit_csv(records, args.csv)
    fits = {}
    for k in cfg.orders:
        try:
            fits[k] = ex.fit_loglog_slope(ex.sweep_points(records, k, args.reference))
        except InsufficientDataError as exc:
            print(f"k={k}: {exc}", file=sys.stderr)
    for k, f in fits.items():
        lo, hi = f.fit_window
        print(
            f"k={k} slope={f.slope:.4f} intercept={f.intercept:.4f} r2={f.r_squared:.4f} "
            f"n={f.n_points} log10_eps_window=[{-hi:.3f},{-lo:.3f}]"
        )
    if args.svg:
        ex.render_svg_scatter(records, fits, args.svg, args.reference)
    return EXIT_OK


def _cmd_sweep_negativity(args) -> int:
    cfg = ex.NegativityConfig(
        n=args.n,
        trials_per_bucket=args.trials_per_bucket,
        buckets=ex.parse_buckets(args.buckets),
        alpha=args.alpha,
        seed=args.seed,
    )
    rows = ex.run_negativity_sweep(cfg, jobs=args.jobs)
    ex.emit_negativity_csv(rows, args.csv)
    for r in rows:
        print(f"log10_eps={r.bucket:g} naive_negative={r.fraction_negative_naive:.4f} series_negative={r.fraction_negative_series:.4f}")
    if args.svg:
        ex.render_svg_negativity(rows, args.svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jsd", description="Jensen-Shannon divergence evaluators and experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate the divergence of two distribution files")
    p.add_argument("--p1", required=True)
    p.add_argument("--p2", required=True)
    p.add_argument("--pi1", type=float, default=0.5)
    p.add_argument("--method", choices=("naive", "exact", "series", "auto"), default="auto")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--rel-tol", type=float, default=1e-12)
    p.add_argument("--units", choices=("nats", "bits"), default="nats")
    p.add_argument("--normalize", action="store_true", help="rescale inputs to sum to 1")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("coeffs", help="print series coefficients B_1..B_K")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("gen", help="generate a random pair with a given eps norm")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--log10-eps", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="output prefix")
    p.set_defaults(func=_cmd_gen)

    sweep = sub.add_parser("sweep", help="run an experiment sweep").add_subparsers(dest="sweep", required=True)

    p = sweep.add_parser("accuracy", help="series error vs ||eps|| with log-log slope fits")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--orders", type=_orders, default=ex.DEFAULT_ORDERS)
    p.add_argument("--eps-range", type=_range, default=(-4.0, 0.0), help="LO:HI for log10 ||eps||")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=ex.DEFAULT_SEED)
    p.add_argument("--reference", choices=("oracle", "naive"), default="oracle", help="error reference for fits and SVG")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=_cmd_sweep_accuracy)

    p = sweep.add_parser("negativity", help="fraction of negative naive values per eps bucket")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--trials-per-bucket", type=int, default=400)
    p.add_argument("--buckets", default="-8:-1:0.5", help="START:STOP:STEP (inclusive) or comma list; pass as --buckets=-8:-1:0.5")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=ex.DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.add_argument("--svg")
    p.set_defaults(func=_cmd_sweep_negativity)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, InsufficientDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except InfeasibleSpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
