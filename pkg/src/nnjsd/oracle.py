"""Extended-precision reference values for error measurement.

The reference evaluates the reduced per-element form in mpmath arithmetic.
Bins whose ``eps`` is tiny lose roughly ``-log10|eps|`` digits to
cancellation inside the bracket, so the working precision is raised by that
amount before evaluating; the returned value keeps ``dps`` significant
digits.
"""

from __future__ import annotations

import math

import mpmath
from mpmath import mpf

from .core import WeightedPair
from .errors import UndefinedRelativeError

DEFAULT_DPS = 40

WideValue = mpmath.mpf

__all__ = ["WideValue", "DEFAULT_DPS", "jsd_reference", "relative_difference"]


def _xlogx(x):
    return mpf(0) if x == 0 else x * mpmath.log(x)


def _delta(e, a):
    # pbar_j * delta_j / 2 is the bin's contribution
    if e == 0:
        return mpf(0)
    if abs(e) == 1:
        u = 1 + a * e
        return 2 * u * mpmath.log(2) - 2 * _xlogx(u)
    ae = 1 + a * e
    return ae * mpmath.log((1 - e * e) / (ae * ae)) + (a + e) * mpmath.log((1 + e) / (1 - e))


def jsd_reference(pair: WeightedPair, dps: int = DEFAULT_DPS) -> WideValue:
    """Divergence in nats, accurate to about ``dps - 15`` significant digits or better.

    Inputs are taken as the exact binary values stored in ``pair``.
    """
    p1 = [float(x) for x in pair.p1]
    p2 = [float(x) for x in pair.p2]
    # exponent gap between the tiniest nonzero |p1 - p2| / (p1 + p2) and 1
    extra = 0
    for a, b in zip(p1, p2):
        if a == b:
            continue
        ratio = abs(a - b) / (a + b)
        extra = max(extra, 330 if ratio == 0.0 else int(math.ceil(-math.log10(ratio))))
    with mpmath.workdps(dps + extra + 10):
        a = mpf(pair.pi1) - mpf(pair.pi2)
        terms = []
        for x, y in zip(p1, p2):
            s = mpf(x) + mpf(y)
            if s == 0:
                continue
            e = (mpf(x) - mpf(y)) / s
            terms.append(s * _delta(e, a))
        # s = 2 pbar, so sum(s * delta) / 4 = sum(pbar * delta) / 2
        total = mpmath.fsum(terms) / 4
    with mpmath.workdps(dps):
        return +total


def relative_difference(a: float, ref) -> float:
    """``|a - ref| / |ref|`` as a native float; 0 when both are 0."""
    ref = mpf(ref)
    if ref == 0:
        if a == 0:
            return 0.0
        raise UndefinedRelativeError(f"relative difference of {a!r} against a zero reference")
    with mpmath.workdps(max(mpmath.mp.dps, DEFAULT_DPS)):
        return float(abs(mpf(a) - ref) / abs(ref))
