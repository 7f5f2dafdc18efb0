"""Seeded random distribution pairs with a prescribed relative-difference norm.

A pair is built around a mean distribution ``pbar`` drawn uniformly from the
simplex and a relative perturbation ``eps`` with ``sum_j pbar_j eps_j = 0``:

    p1 = pbar * (1 + eps),  p2 = pbar * (1 - eps)

``eps`` starts as a Gaussian vector with its ``pbar``-weighted mean removed
and is scaled linearly to the target RMS. When the linear scaling would push
some ``|eps_j|`` past 1 (targets near 1), the direction is passed through
``tanh`` and rebalanced instead; if even that cannot reach the target the
draw is rejected and redrawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import WeightedPair, epsilon_rms_norm, reduce
from .errors import InfeasibleSpecError, ValidationError

NORM_TOL_LOG10 = 0.05
MAX_ATTEMPTS = 1000

_MASK64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed for stream ``index``: ``splitmix64(seed XOR splitmix64(index))``."""
    return _splitmix64((seed & _MASK64) ^ _splitmix64(index & _MASK64))


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(int(seed) & _MASK64)


@dataclass(frozen=True)
class GenSpec:
    n: int = 100
    target_log10_eps: float = -2.0
    alpha: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValidationError(f"n must be at least 2, got {self.n}")
        if not -9.0 <= self.target_log10_eps < 0.0:
            raise ValidationError(f"target_log10_eps must lie in [-9, 0), got {self.target_log10_eps}")
        if not -1.0 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must lie in [-1, 1], got {self.alpha}")
        if not 0 <= self.seed <= _MASK64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True, eq=False)
class GeneratedPair:
    pair: WeightedPair
    eps_norm: float  # achieved RMS of eps, measured on the returned pair
    eps: np.ndarray  # generator's eps before rounding into p1, p2

    @property
    def log10_eps_norm(self) -> float:
        return math.log10(self.eps_norm) if self.eps_norm > 0 else -math.inf


def sample_simplex(n: int, seed) -> np.ndarray:
    """Uniform point on the probability simplex (normalized exponential spacings)."""
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if n == 1:
        return np.ones(1)
    g = _rng(seed).standard_exponential(n)
    return g / g.sum()


def _rms(x: np.ndarray) -> float:
    return math.sqrt(float(np.mean(x * x)))


def _balanced(u: np.ndarray, pbar: np.ndarray) -> np.ndarray:
    # shrink whichever side carries more pbar-weighted mass so the weighted sum is 0
    pos = u > 0
    neg = u < 0
    up = float(pbar[pos] @ u[pos])
    un = -float(pbar[neg] @ u[neg])
    if up == 0.0 or un == 0.0:
        return np.zeros_like(u)
    u = u.copy()
    if up > un:
        u[pos] *= un / up
    else:
        u[neg] *= up / un
    return u


def _saturated_eps(d: np.ndarray, pbar: np.ndarray, target: float) -> np.ndarray | None:
    def eps_at(log_s):
        return _balanced(np.tanh(math.exp(log_s) * d), pbar)

    def gap(log_s):
        r = _rms(eps_at(log_s))
        return (math.log10(r) if r > 0 else -400.0) - target

    lo = math.log(10.0**target / _rms(d))  # linear scale: tanh only shrinks, so gap < 0 here
    hi = lo + 60.0
    if gap(hi) < -NORM_TOL_LOG10:
        return None
    if gap(hi) <= 0.0:
        return eps_at(hi)
    if gap(lo) >= 0.0:
        return eps_at(lo)
    return eps_at(brentq(gap, lo, hi, xtol=1e-12))


def _draw_eps(rng: np.random.Generator, pbar: np.ndarray, target: float) -> np.ndarray | None:
    g = rng.standard_normal(pbar.size)
    d = g - float(pbar @ g)
    rms = _rms(d)
    if rms == 0.0:
        return None
    eps = d * (10.0**target / rms)
    if np.max(np.abs(eps)) <= 1.0:
        return eps
    return _saturated_eps(d, pbar, target)


def sample_pair(spec: GenSpec) -> GeneratedPair:
    """Draw a weighted pair whose achieved ``log10 RMS(eps)`` is within 0.05 of the target.

    Weights are ``pi1 = (1 + alpha) / 2``, ``pi2 = (1 - alpha) / 2``.
    Raises :class:`InfeasibleSpecError` after 1000 rejected draws.
    """
    rng = _rng(spec.seed)
    pi1 = (1.0 + spec.alpha) / 2.0
    pi2 = (1.0 - spec.alpha) / 2.0
    for _ in range(MAX_ATTEMPTS):
        pbar = sample_simplex(spec.n, rng)
        eps = _draw_eps(rng, pbar, spec.target_log10_eps)
        if eps is None:
            continue
        p1 = np.clip(pbar * (1.0 + eps), 0.0, 1.0)
        p2 = np.clip(pbar * (1.0 - eps), 0.0, 1.0)
        try:
            pair = WeightedPair(p1, p2, pi1, pi2)
        except ValidationError:
            continue
        norm = epsilon_rms_norm(reduce(pair))
        if norm > 0.0 and abs(math.log10(norm) - spec.target_log10_eps) <= NORM_TOL_LOG10:
            return GeneratedPair(pair=pair, eps_norm=norm, eps=eps)
    raise InfeasibleSpecError(
        f"no pair with log10 ||eps|| = {spec.target_log10_eps} (n={spec.n}) after {MAX_ATTEMPTS} attempts"
    )
