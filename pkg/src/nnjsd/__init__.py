"""Non-negative series evaluation of small Jensen-Shannon divergences."""

from ._backend import BACKEND
from .core import (
    Diagnostics,
    EvalResult,
    ReducedForm,
    SeriesCoefficients,
    WeightedPair,
    delta_series,
    entropy,
    epsilon_rms_norm,
    jsd_auto,
    jsd_exact_reduced,
    jsd_naive,
    jsd_series,
    reduce,
    series_coefficients,
    to_units,
)
from .errors import InfeasibleSpecError, InsufficientDataError, UndefinedRelativeError, ValidationError
from .oracle import jsd_reference, relative_difference
from .pairgen import GenSpec, GeneratedPair, derive_seed, sample_pair, sample_simplex

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Diagnostics",
    "EvalResult",
    "GenSpec",
    "GeneratedPair",
    "InfeasibleSpecError",
    "InsufficientDataError",
    "ReducedForm",
    "SeriesCoefficients",
    "UndefinedRelativeError",
    "ValidationError",
    "WeightedPair",
    "delta_series",
    "derive_seed",
    "entropy",
    "epsilon_rms_norm",
    "jsd_auto",
    "jsd_exact_reduced",
    "jsd_naive",
    "jsd_reference",
    "jsd_series",
    "reduce",
    "relative_difference",
    "sample_pair",
    "sample_simplex",
    "series_coefficients",
    "to_units",
]
