"""Jensen-Shannon divergence evaluators for two weighted distributions.

Four evaluators share one input type, :class:`WeightedPair`:

* :func:`jsd_naive` -- mixture entropy minus weighted component entropies.
  Loses all significant digits when the distributions nearly coincide and
  can come out negative.
* :func:`jsd_exact_reduced` -- the same quantity rewritten per element in
  terms of the mean distribution ``pbar`` and the relative half-difference
  ``eps = (p1 - p2) / (p1 + p2)``.
* :func:`jsd_series` -- truncated power series in ``eps``. Terms are summed
  in consecutive pairs, each of which is non-negative, so the result is
  ``>= 0`` bit for bit at every truncation order.
* :func:`jsd_auto` -- picks the series with an adaptive order for small
  ``eps`` and the exact form otherwise.

All values are in nats unless ``units="bits"`` is requested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from ._backend import kernels
from .errors import ValidationError

Units = Literal["nats", "bits"]
Method = Literal["naive", "exact_reduced", "series"]

SUM_TOL = 1e-12
WEIGHT_TOL = 1e-15
AUTO_EPS_THRESHOLD = 0.5
AUTO_MAX_ORDER = 64
LN2 = math.log(2.0)

__all__ = [
    "WeightedPair",
    "ReducedForm",
    "SeriesCoefficients",
    "EvalResult",
    "Diagnostics",
    "entropy",
    "reduce",
    "jsd_naive",
    "jsd_exact_reduced",
    "series_coefficients",
    "delta_series",
    "jsd_series",
    "jsd_auto",
    "epsilon_rms_norm",
    "to_units",
]


def _as_probability_vector(p, name: str, normalize: bool = False) -> np.ndarray:
    arr = np.array(p, dtype=np.float64, copy=True).reshape(-1)
    if arr.size == 0:
        raise ValidationError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} has non-finite entries")
    if np.any(arr < 0.0):
        raise ValidationError(f"{name} has negative entries")
    total = math.fsum(arr)
    if normalize:
        if total <= 0.0:
            raise ValidationError(f"{name} has zero total mass")
        arr = arr / total
        total = math.fsum(arr)
    if abs(total - 1.0) > SUM_TOL:
        raise ValidationError(f"{name} sums to {total!r}, not 1 within {SUM_TOL}")
    if np.any(arr > 1.0):
        raise ValidationError(f"{name} has entries above 1")
    arr.setflags(write=False)
    return arr


def _check_units(units: str) -> None:
    if units not in ("nats", "bits"):
        raise ValidationError(f"units must be 'nats' or 'bits', got {units!r}")


def to_units(value_nats: float, units: Units) -> float:
    """Convert a value in nats to ``units``; bits divide by ln 2."""
    _check_units(units)
    if units == "bits":
        return value_nats / LN2
    return value_nats


@dataclass(frozen=True, eq=False)
class WeightedPair:
    """Two distributions over a common sample space plus mixture weights.

    Construction validates everything; an instance is always well formed.
    Pass ``normalize=True`` to rescale inputs carrying rounding residue.
    """

    p1: np.ndarray
    p2: np.ndarray
    pi1: float = 0.5
    pi2: float | None = None
    normalize: bool = field(default=False, repr=False)

    def __post_init__(self):
        p1 = _as_probability_vector(self.p1, "p1", self.normalize)
        p2 = _as_probability_vector(self.p2, "p2", self.normalize)
        if p1.shape != p2.shape:
            raise ValidationError(f"p1 and p2 differ in length: {p1.size} vs {p2.size}")
        pi1 = float(self.pi1)
        pi2 = 1.0 - pi1 if self.pi2 is None else float(self.pi2)
        if not (0.0 <= pi1 <= 1.0 and 0.0 <= pi2 <= 1.0):
            raise ValidationError(f"weights must lie in [0, 1], got ({pi1}, {pi2})")
        if abs(pi1 + pi2 - 1.0) > WEIGHT_TOL:
            raise ValidationError(f"weights sum to {pi1 + pi2!r}, not 1")
        object.__setattr__(self, "p1", p1)
        object.__setattr__(self, "p2", p2)
        object.__setattr__(self, "pi1", pi1)
        object.__setattr__(self, "pi2", pi2)

    @property
    def n(self) -> int:
        return int(self.p1.size)

    @property
    def alpha(self) -> float:
        return self.pi1 - self.pi2

    def swapped(self) -> "WeightedPair":
        return WeightedPair(self.p2, self.p1, self.pi2, self.pi1)


@dataclass(frozen=True, eq=False)
class ReducedForm:
    """Mean distribution, half-difference, relative difference and weight skew."""

    pbar: np.ndarray
    eta: np.ndarray
    eps: np.ndarray
    alpha: float

    @property
    def n(self) -> int:
        return int(self.pbar.size)

    @property
    def empty_bins(self) -> bool:
        return bool(np.any(self.pbar == 0.0))

    @property
    def boundary_eps(self) -> bool:
        return bool(np.any(np.abs(self.eps) == 1.0))


@dataclass(frozen=True, eq=False)
class SeriesCoefficients:
    alpha: float
    order: int
    b: np.ndarray  # b[i - 1] holds B_i

    def __getitem__(self, i: int) -> float:
        """1-based access, ``coeffs[i] == B_i``."""
        if not 1 <= i <= self.order:
            raise IndexError(f"coefficient index {i} outside 1..{self.order}")
        return float(self.b[i - 1])


@dataclass(frozen=True)
class Diagnostics:
    empty_bins: bool = False  # some pbar_j == 0, eps_j forced to 0
    boundary_eps: bool = False  # some |eps_j| == 1 (disjoint support in that bin)


@dataclass(frozen=True)
class EvalResult:
    value: float
    units: Units
    method: Method
    order: int | None = None
    diagnostics: Diagnostics = Diagnostics()
    auto_selected: bool = False

    def __float__(self) -> float:
        return self.value


def entropy(p) -> float:
    """Shannon entropy in nats with ``0 log 0 = 0``.

    Raises :class:`ValidationError` for negative entries or a sum away
    from 1 by more than 1e-12.
    """
    arr = _as_probability_vector(p, "p")
    return kernels.entropy_sum(arr)


def reduce(pair: WeightedPair) -> ReducedForm:
    """Reparameterize ``pair`` as ``(pbar, eta, eps, alpha)``.

    Bins with ``pbar_j == 0`` get ``eps_j = 0``: an empty bin contributes
    nothing to the divergence.
    """
    pbar = (pair.p1 + pair.p2) / 2.0
    eta = (pair.p1 - pair.p2) / 2.0
    eps = np.zeros_like(pbar)
    live = pbar > 0.0
    # |p1 - p2| <= p1 + p2 survives rounding, so the clip never bites
    eps[live] = np.clip(eta[live] / pbar[live], -1.0, 1.0)
    for a in (pbar, eta, eps):
        a.setflags(write=False)
    return ReducedForm(pbar=pbar, eta=eta, eps=eps, alpha=pair.alpha)


def epsilon_rms_norm(rf: ReducedForm) -> float:
    """Root-mean-square of ``eps`` over all ``N`` bins."""
    return math.sqrt(math.fsum(rf.eps * rf.eps) / rf.n)


def _diagnostics(rf: ReducedForm) -> Diagnostics:
    return Diagnostics(empty_bins=rf.empty_bins, boundary_eps=rf.boundary_eps)


def jsd_naive(pair: WeightedPair, units: Units = "nats") -> EvalResult:
    """Mixture entropy minus weighted component entropies, as written.

    May return a (wrong) negative value for nearly identical distributions;
    that is the cancellation this library exists to avoid.
    """
    _check_units(units)
    mix = pair.pi1 * pair.p1 + pair.pi2 * pair.p2
    h_mix = kernels.entropy_sum(mix)
    h_1 = kernels.entropy_sum(pair.p1)
    h_2 = kernels.entropy_sum(pair.p2)
    value = h_mix - (pair.pi1 * h_1 + pair.pi2 * h_2)
    return EvalResult(to_units(value, units), units, "naive", diagnostics=_diagnostics(reduce(pair)))


def jsd_exact_reduced(pair: WeightedPair, units: Units = "nats") -> EvalResult:
    """Exact divergence from the per-element reduced form.

    Each bin contributes ``pbar_j * delta_j / 2`` with::

        delta = (1 + a e) ln((1 - e^2) / (1 + a e)^2) + (a + e) ln((1 + e) / (1 - e))

    For ``|e| <= 1/2`` this is evaluated through ``log1p`` and ``atanh``. Above
    that, the identical rearrangement::

        delta = (1 + a) f(1 + e) + (1 - a) f(1 - e) - 2 f(1 + a e),  f(u) = u ln u

    is used instead: it never forms ``1 - e^2``, handles the one-sided limit
    ``|e| == 1`` through ``f(0) = 0``, and cancels exactly at ``a == +-1``.
    """
    _check_units(units)
    rf = reduce(pair)
    deltas = kernels.exact_deltas(rf.eps, rf.alpha)
    value = kernels.half_weighted_sum(rf.pbar, deltas)
    return EvalResult(to_units(value, units), units, "exact_reduced", diagnostics=_diagnostics(rf))


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not -1.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha must lie in [-1, 1], got {alpha}")
    return alpha


def _check_order(order: int) -> int:
    if isinstance(order, bool) or int(order) != order or order < 1:
        raise ValidationError(f"order must be a positive integer, got {order!r}")
    return int(order)


def series_coefficients(alpha: float, order: int) -> SeriesCoefficients:
    """Coefficients ``B_1 .. B_order`` of ``delta = sum_i B_i eps^(i+1)``.

    Odd ``i``: ``2 (1 - alpha^(i+1)) / (i (i+1))``.
    Even ``i``: ``-2 alpha (1 - alpha^i) / (i (i+1))``, which is the same as
    ``-2 (alpha - alpha^(i+1)) / (i (i+1))`` but reuses the factor
    ``1 - alpha^i`` of its odd partner. Sharing that factor keeps
    ``|B_2m| < B_(2m-1)`` after rounding even for ``alpha`` next to +-1,
    which the non-negativity of each pair group depends on.
    """
    alpha = _check_alpha(alpha)
    order = _check_order(order)
    b = np.empty(order, dtype=np.float64)
    apow = 1.0
    shared = 0.0
    for i in range(1, order + 1):
        denom = i * (i + 1)
        if i % 2:
            apow = apow * alpha
            apow = apow * alpha  # alpha^(i+1)
            shared = 1.0 - apow
            b[i - 1] = 2.0 * shared / denom
        else:
            b[i - 1] = -(2.0 * alpha * shared) / denom + 0.0  # +0.0 clears -0.0
    b.setflags(write=False)
    return SeriesCoefficients(alpha=alpha, order=order, b=b)


def delta_series(eps_j: float, alpha: float, order: int) -> float:
    """Per-element truncated series ``sum_{i<=order} B_i eps^(i+1)``, pair-grouped."""
    eps_j = float(eps_j)
    if not -1.0 <= eps_j <= 1.0:
        raise ValidationError(f"eps must lie in [-1, 1], got {eps_j}")
    coeffs = series_coefficients(alpha, order)
    return float(kernels.series_deltas(np.array([eps_j]), coeffs.b)[0])


def _series_value(rf: ReducedForm, order: int) -> float:
    coeffs = series_coefficients(rf.alpha, order)
    deltas = kernels.series_deltas(rf.eps, coeffs.b)
    return kernels.half_weighted_sum(rf.pbar, deltas)


def jsd_series(pair: WeightedPair, order: int = 12, units: Units = "nats") -> EvalResult:
    """Divergence truncated after ``order`` series terms (highest power ``eps^(order+1)``).

    Non-negative bit for bit at every order; nondecreasing over even orders.
    """
    _check_units(units)
    order = _check_order(order)
    rf = reduce(pair)
    value = _series_value(rf, order)
    return EvalResult(to_units(value, units), units, "series", order, _diagnostics(rf))


def jsd_auto(pair: WeightedPair, rel_tol: float = 1e-12, units: Units = "nats") -> EvalResult:
    """Series with adaptive order when ``max|eps| < 0.5``, exact form otherwise.

    The order grows one pair group at a time until the newest group adds no
    more than ``rel_tol`` times the running total, capped at order 64.
    """
    _check_units(units)
    if not 0.0 < rel_tol < 1.0:
        raise ValidationError(f"rel_tol must lie in (0, 1), got {rel_tol}")
    rf = reduce(pair)
    if np.max(np.abs(rf.eps)) >= AUTO_EPS_THRESHOLD:
        res = jsd_exact_reduced(pair, units)
        return EvalResult(res.value, units, res.method, diagnostics=res.diagnostics, auto_selected=True)

    coeffs = series_coefficients(rf.alpha, AUTO_MAX_ORDER).b
    e = rf.eps
    e2 = e * e
    pw = e2
    total = 0.0
    order = 0
    for m in range(AUTO_MAX_ORDER // 2):
        group = 0.5 * math.fsum(rf.pbar * ((coeffs[2 * m] + coeffs[2 * m + 1] * e) * pw))
        total += group
        order = 2 * m + 2
        if group <= rel_tol * total:
            break
        pw = pw * e2
    value = _series_value(rf, order)
    return EvalResult(to_units(value, units), units, "series", order, _diagnostics(rf), auto_selected=True)
