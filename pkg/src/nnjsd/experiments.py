"""Error-scaling and negativity sweeps with CSV/SVG emitters.

Accuracy sweep: each trial draws a target ``log10 ||eps||`` uniformly from a
range, generates a pair, and evaluates the oracle, the naive and exact
formulas, and the series at every requested order. A log-log least-squares
fit of relative error against ``closeness = -log10 ||eps||`` (decades below
1) then gives the error-scaling slope per order: about ``-k``, since the
truncation error is ``O(eps^(k+2))`` against a divergence of ``O(eps^2)``.
With ``alpha = 0`` the even coefficients vanish and odd orders gain one
power, so ``k = 3`` scales like ``-4``.

Negativity sweep: pairs at fixed ``||eps||`` buckets; counts how often the
naive formula and the series come out strictly negative.

Per-trial seeds come from :func:`~nnjsd.pairgen.derive_seed`, so results do
not depend on how trials are scheduled across workers.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .core import jsd_exact_reduced, jsd_naive, jsd_series
from .errors import InsufficientDataError, ValidationError
from .oracle import jsd_reference, relative_difference
from .pairgen import GenSpec, derive_seed, sample_pair

DEFAULT_SEED = 20240101
DEFAULT_ORDERS = (3, 6, 9, 12)
FIT_FLOOR = 1e-13
# closeness >= 0.3, i.e. log10 ||eps|| <= -0.3, where the series still converges fast
FIT_WINDOW = (0.3, math.inf)
CSV_HEADER = ("trial", "log10_eps", "jsd_oracle", "jsd_naive", "jsd_exact", "k", "jsd_series", "rel_diff")


@dataclass(frozen=True)
class AccuracyConfig:
    n: int = 100
    trials: int = 2000
    orders: tuple[int, ...] = DEFAULT_ORDERS
    eps_range: tuple[float, float] = (-4.0, 0.0)
    alpha: float = 0.0
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        lo, hi = self.eps_range
        if self.trials < 10:
            raise ValidationError(f"trials must be at least 10, got {self.trials}")
        if not self.orders or any(k < 1 for k in self.orders):
            raise ValidationError(f"orders must be a nonempty list of positive integers, got {self.orders}")
        if not -9.0 <= lo < hi <= 0.0:
            raise ValidationError(f"eps range must lie within [-9, 0), got {self.eps_range}")


@dataclass(frozen=True)
class NegativityConfig:
    n: int = 100
    trials_per_bucket: int = 400
    buckets: tuple[float, ...] = tuple(-8.0 + 0.5 * i for i in range(15))
    alpha: float = 0.0
    seed: int = DEFAULT_SEED
    order: int = 12

    def __post_init__(self):
        if self.trials_per_bucket < 100:
            raise ValidationError(f"trials per bucket must be at least 100, got {self.trials_per_bucket}")
        if not self.buckets:
            raise ValidationError("no buckets")


@dataclass
class SweepRecord:
    trial: int
    log10_eps_norm: float
    jsd_oracle: float
    jsd_naive: float
    jsd_exact_reduced: float
    jsd_series: dict[int, float]
    rel_diff_naive: dict[int, float | None]
    # relative error of each series value against the wide-precision oracle
    rel_err_oracle: dict[int, float] = field(default_factory=dict)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    n_points: int
    fit_window: tuple[float, float]


@dataclass(frozen=True)
class NegativityRow:
    bucket: float
    trials: int
    fraction_negative_naive: float
    fraction_negative_series: float


def _trial_seed(seed: int, trial: int) -> int:
    return derive_seed(seed, trial)


def _run_trial(args) -> SweepRecord:
    cfg, t = args
    tseed = _trial_seed(cfg.seed, t)
    lo, hi = cfg.eps_range
    target = float(np.random.default_rng(tseed).uniform(lo, hi))
    gen = sample_pair(GenSpec(cfg.n, target, cfg.alpha, derive_seed(tseed, 1)))
    pair = gen.pair
    ref = jsd_reference(pair)
    naive = jsd_naive(pair).value
    series = {k: jsd_series(pair, k).value for k in cfg.orders}
    rel_naive = {k: (abs(v - naive) / abs(naive) if naive > 0 else None) for k, v in series.items()}
    rel_oracle = {k: relative_difference(v, ref) for k, v in series.items()}
    return SweepRecord(
        trial=t,
        log10_eps_norm=gen.log10_eps_norm,
        jsd_oracle=float(ref),
        jsd_naive=naive,
        jsd_exact_reduced=jsd_exact_reduced(pair).value,
        jsd_series=series,
        rel_diff_naive=rel_naive,
        rel_err_oracle=rel_oracle,
    )


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def run_accuracy_sweep(cfg: AccuracyConfig = AccuracyConfig(), jobs: int = 1) -> list[SweepRecord]:
    """One :class:`SweepRecord` per trial, sorted by trial index."""
    records = _map(_run_trial, [(cfg, t) for t in range(cfg.trials)], jobs)
    return sorted(records, key=lambda r: r.trial)


def fit_loglog_slope(points: Sequence[tuple[float, float]], window=FIT_WINDOW, floor: float = FIT_FLOOR) -> FitResult:
    """Least-squares line through ``(x, log10 y)`` for points with ``lo <= x <= hi`` and ``y > floor``."""
    lo, hi = window
    xs, ys = [], []
    for x, y in points:
        if y is None or not (lo <= x <= hi) or not (y > floor) or not math.isfinite(y):
            continue
        xs.append(x)
        ys.append(math.log10(y))
    if len(xs) < 2 or min(xs) == max(xs):
        raise InsufficientDataError(f"need at least 2 distinct points in window {window} above {floor}, got {len(xs)}")
    x = np.array(xs)
    y = np.array(ys)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(resid @ resid)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return FitResult(float(slope), float(intercept), r2, len(xs), (float(x.min()), float(x.max())))


def sweep_points(records: Sequence[SweepRecord], k: int, reference: str = "oracle") -> list[tuple[float, float]]:
    """``(-log10 ||eps||, relative error)`` pairs for order ``k``.

    ``reference="oracle"`` measures the series against the wide-precision
    value; ``"naive"`` against the double-precision naive formula, whose own
    rounding error (about 1e-15 / ||eps||^2 relative) dominates at small eps.
    """
    if reference == "oracle":
        return [(-r.log10_eps_norm, r.rel_err_oracle[k]) for r in records]
    if reference == "naive":
        return [(-r.log10_eps_norm, r.rel_diff_naive[k]) for r in records]
    raise ValidationError(f"reference must be 'oracle' or 'naive', got {reference!r}")


def fit_sweep(records, orders, reference: str = "oracle", window=FIT_WINDOW, floor: float = FIT_FLOOR) -> dict[int, FitResult]:
    return {k: fit_loglog_slope(sweep_points(records, k, reference), window, floor) for k in orders}


def _negativity_trial(args):
    cfg, bi, t = args
    bucket = cfg.buckets[bi]
    seed = derive_seed(derive_seed(cfg.seed, bi), t)
    pair = sample_pair(GenSpec(cfg.n, bucket, cfg.alpha, seed)).pair
    return jsd_naive(pair).value < 0.0, jsd_series(pair, cfg.order).value < 0.0


def run_negativity_sweep(cfg: NegativityConfig = NegativityConfig(), jobs: int = 1) -> list[NegativityRow]:
    """Fraction of strictly negative naive and series values per ``log10 ||eps||`` bucket."""
    rows = []
    for bi, bucket in enumerate(cfg.buckets):
        flags = _map(_negativity_trial, [(cfg, bi, t) for t in range(cfg.trials_per_bucket)], jobs)
        T = cfg.trials_per_bucket
        rows.append(
            NegativityRow(
                bucket=float(bucket),
                trials=T,
                fraction_negative_naive=sum(f[0] for f in flags) / T,
                fraction_negative_series=sum(f[1] for f in flags) / T,
            )
        )
    return rows


def parse_buckets(text: str) -> tuple[float, ...]:
    """``"start:stop:step"`` (stop inclusive) or a comma list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValidationError(f"bucket range must be start:stop:step, got {text!r}")
        start, stop, step = map(float, parts)
        if step <= 0 or stop < start:
            raise ValidationError(f"bad bucket range {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 12) for i in range(count))
    return tuple(float(x) for x in text.split(",") if x.strip())


# -- emitters ---------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return ""
    return repr(float(v))


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_csv(records: Sequence[SweepRecord], path) -> None:
    """Long-form CSV, one row per (trial, k), floats in shortest round-trip form."""
    if not records:
        raise ValidationError("no records to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in sorted(records, key=lambda r: r.trial):
        for k in sorted(r.jsd_series):
            w.writerow(
                [
                    r.trial,
                    _fmt(r.log10_eps_norm),
                    _fmt(r.jsd_oracle),
                    _fmt(r.jsd_naive),
                    _fmt(r.jsd_exact_reduced),
                    k,
                    _fmt(r.jsd_series[k]),
                    _fmt(r.rel_diff_naive[k]),
                ]
            )
    _atomic_write(path, buf.getvalue())


def emit_negativity_csv(rows: Sequence[NegativityRow], path) -> None:
    if not rows:
        raise ValidationError("no rows to write")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("log10_eps", "trials", "fraction_negative_naive", "fraction_negative_series"))
    for r in rows:
        w.writerow([_fmt(r.bucket), r.trials, _fmt(r.fraction_negative_naive), _fmt(r.fraction_negative_series)])
    _atomic_write(path, buf.getvalue())


PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


class _Canvas:
    """Fixed-size SVG plot area with linear data-to-pixel maps."""

    W, H = 720, 480
    L, R, T, B = 70, 150, 30, 50

    def __init__(self, xlim, ylim):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.parts: list[str] = []

    def px(self, x):
        return self.L + (x - self.x0) / (self.x1 - self.x0) * (self.W - self.L - self.R)

    def py(self, y):
        return self.H - self.B - (y - self.y0) / (self.y1 - self.y0) * (self.H - self.T - self.B)

    def axes(self, xlabel, ylabel):
        p = self.parts
        x_a, x_b = self.px(self.x0), self.px(self.x1)
        y_a, y_b = self.py(self.y0), self.py(self.y1)
        p.append(f'<rect x="{x_a:.2f}" y="{y_b:.2f}" width="{x_b - x_a:.2f}" height="{y_a - y_b:.2f}" fill="none" stroke="#000"/>')
        for tx in _ticks(self.x0, self.x1):
            p.append(f'<text x="{self.px(tx):.2f}" y="{y_a + 16:.2f}" font-size="11" text-anchor="middle">{tx:g}</text>')
        for ty in _ticks(self.y0, self.y1):
            p.append(f'<text x="{x_a - 6:.2f}" y="{self.py(ty) + 4:.2f}" font-size="11" text-anchor="end">{ty:g}</text>')
        p.append(f'<text x="{(x_a + x_b) / 2:.2f}" y="{self.H - 12}" font-size="13" text-anchor="middle">{xlabel}</text>')
        p.append(
            f'<text x="16" y="{(y_a + y_b) / 2:.2f}" font-size="13" text-anchor="middle" '
            f'transform="rotate(-90 16 {(y_a + y_b) / 2:.2f})">{ylabel}</text>'
        )

    def legend(self, entries):
        x = self.W - self.R + 12
        for i, (label, color) in enumerate(entries):
            y = self.T + 18 * i + 10
            self.parts.append(
                f'<g class="legend-entry"><rect x="{x}" y="{y - 8}" width="10" height="10" fill="{color}"/>'
                f'<text x="{x + 16}" y="{y + 1}" font-size="11">{label}</text></g>'
            )

    def render(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.W}" height="{self.H}" '
            f'viewBox="0 0 {self.W} {self.H}">\n<rect width="100%" height="100%" fill="#fff"/>\n'
        )
        return head + "\n".join(self.parts) + "\n</svg>\n"


def _limits(values):
    lo = math.floor(min(values))
    return lo, max(math.ceil(max(values)), lo + 1)


def _ticks(lo, hi):
    step = 10 ** math.floor(math.log10(max(hi - lo, 1e-12)))
    if (hi - lo) / step < 4:
        step /= 2
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-9 * step:
        out.append(round(v, 10))
        v += step
    return out


def render_svg_scatter(records: Sequence[SweepRecord], fits: dict[int, FitResult], path, reference: str = "oracle") -> None:
    """Scatter of ``-log10 ||eps||`` vs ``log10`` relative error per order, with fitted lines."""
    if not records:
        raise ValidationError("no records to plot")
    orders = sorted(records[0].jsd_series)
    series = {}
    for k in orders:
        pts = [(x, math.log10(y)) for x, y in sweep_points(records, k, reference) if y is not None and y > 0]
        series[k] = pts
    all_x = [-r.log10_eps_norm for r in records]
    all_y = [y for pts in series.values() for _, y in pts] or [-16.0, 0.0]
    xlim = _limits(all_x)
    ylim = _limits(all_y)
    c = _Canvas(xlim, ylim)
    c.axes("-log10 ||eps||", f"log10 relative error vs {reference}")
    legend = []
    for i, k in enumerate(orders):
        color = PALETTE[i % len(PALETTE)]
        dots = "".join(f'<circle cx="{c.px(x):.2f}" cy="{c.py(y):.2f}" r="1.6"/>' for x, y in series[k])
        c.parts.append(f'<g class="series" data-k="{k}" fill="{color}" fill-opacity="0.5">{dots}</g>')
        label = f"k={k}"
        if k in fits:
            f = fits[k]
            xa, xb = f.fit_window
            ya, yb = f.slope * xa + f.intercept, f.slope * xb + f.intercept
            c.parts.append(
                f'<line class="fit" data-k="{k}" data-slope="{f.slope!r}" x1="{c.px(xa):.2f}" y1="{c.py(ya):.2f}" '
                f'x2="{c.px(xb):.2f}" y2="{c.py(yb):.2f}" stroke="{color}" stroke-width="2"/>'
            )
            label += f" slope {f.slope:.2f}"
        legend.append((label, color))
    c.legend(legend)
    _atomic_write(path, c.render())


def render_svg_negativity(rows: Sequence[NegativityRow], path) -> None:
    if not rows:
        raise ValidationError("no rows to plot")
    c = _Canvas(_limits([r.bucket for r in rows]), (0.0, 1.0))
    c.axes("log10 ||eps||", "fraction negative")
    legend = []
    for i, (name, attr) in enumerate((("naive", "fraction_negative_naive"), ("series", "fraction_negative_series"))):
        color = PALETTE[i]
        pts = [(r.bucket, getattr(r, attr)) for r in rows]
        path_d = " ".join(f"{'M' if j == 0 else 'L'}{c.px(x):.2f},{c.py(y):.2f}" for j, (x, y) in enumerate(pts))
        dots = "".join(f'<circle cx="{c.px(x):.2f}" cy="{c.py(y):.2f}" r="3"/>' for x, y in pts)
        c.parts.append(
            f'<g class="series" data-method="{name}" fill="{color}"><path d="{path_d}" fill="none" stroke="{color}"/>{dots}</g>'
        )
        legend.append((name, color))
    c.legend(legend)
    _atomic_write(path, c.render())
