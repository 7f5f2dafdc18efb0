"""Pure numpy fallback for the compiled kernels in ``_kernels.pyx``.

Every function performs the same floating-point operations in the same order
as its compiled twin, so ``series_deltas`` and ``half_weighted_sum`` agree
bit for bit. Functions calling ``log`` may differ by an ulp depending on the
libm numpy links against.
"""

import numpy as np

def _sequential_sum(x):
    if x.size == 0:
        return 0.0
    return float(np.add.accumulate(x)[-1])


def entropy_sum(p):
    p = np.asarray(p, dtype=np.float64)
    q = p[p > 0.0]
    return -_sequential_sum(q * np.log(q))


def half_weighted_sum(w, d):
    return 0.5 * _sequential_sum(np.asarray(w) * np.asarray(d))


def series_deltas(eps, b):
    eps = np.asarray(eps, dtype=np.float64)
    k = len(b)
    e2 = eps * eps
    pw = e2
    acc = np.zeros_like(eps)
    for m in range(k // 2):
        acc = acc + (b[2 * m] + b[2 * m + 1] * eps) * pw
        pw = pw * e2
    if k % 2:
        acc = acc + b[k - 1] * pw
    return acc


def _xlogx(u):
    out = np.zeros_like(u)
    pos = u > 0.0
    out[pos] = u[pos] * np.log(u[pos])
    return out


def exact_deltas(eps, alpha):
    eps = np.asarray(eps, dtype=np.float64)
    out = np.zeros_like(eps)
    small = (eps != 0.0) & (np.abs(eps) <= 0.5)
    e = eps[small]
    ae = alpha * e
    out[small] = (1.0 + ae) * (np.log1p(-(e * e)) - 2.0 * np.log1p(ae)) + (alpha + e) * (2.0 * np.arctanh(e))
    big = np.abs(eps) > 0.5
    e = eps[big]
    out[big] = ((1.0 + alpha) * _xlogx(1.0 + e) + (1.0 - alpha) * _xlogx(1.0 - e)) - 2.0 * _xlogx(1.0 + alpha * e)
    return out
