import numpy as np
import pytest

import nnjsd.core
from nnjsd import _kernels_py

try:
    from nnjsd import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = {"python": _kernels_py}
if _kernels_c is not None:
    BACKENDS["cython"] = _kernels_c


@pytest.fixture(params=sorted(BACKENDS))
def backend(request, monkeypatch):
    """Run the test once per available kernel backend."""
    monkeypatch.setattr(nnjsd.core, "kernels", BACKENDS[request.param])
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_pair(rng, n, scale, alpha=0.0):
    """Quick independent pair builder (not the library generator)."""
    from nnjsd import WeightedPair

    pbar = rng.dirichlet(np.ones(n))
    d = rng.standard_normal(n)
    d -= pbar @ d
    d *= scale / max(np.max(np.abs(d)), 1e-300)
    return WeightedPair(pbar * (1 + d), pbar * (1 - d), (1 + alpha) / 2, (1 - alpha) / 2)
