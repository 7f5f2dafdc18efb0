"""Plain-text distribution files: one non-negative decimal per line."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .errors import ValidationError


def read_distribution(path) -> np.ndarray:
    """Parse a distribution file, skipping blank lines.

    Only syntax and sign are checked here; normalization is validated when
    the vector goes into a :class:`~nnjsd.core.WeightedPair`.
    """
    values = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text:
                continue
            try:
                v = float(text)
            except ValueError:
                raise ValidationError(f"{path}:{lineno}: not a number: {text!r}") from None
            if not np.isfinite(v) or v < 0.0:
                raise ValidationError(f"{path}:{lineno}: expected a non-negative finite value, got {text!r}")
            values.append(v)
    if not values:
        raise ValidationError(f"{path}: no values")
    return np.array(values, dtype=np.float64)


def write_distribution(path, p) -> None:
    # repr() round-trips doubles exactly
    Path(path).write_text("".join(f"{float(v)!r}\n" for v in p), encoding="utf-8")
