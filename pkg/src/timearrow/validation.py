"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np

from .exceptions import InsufficientLengthError

__all__ = ["check_time_series", "check_coeff_blocks", "check_paired_samples"]


def check_time_series(x, *, min_rows: int = 1, name: str = "series") -> np.ndarray:
    """Validate a T x K time series and return it as a float64 2-d array.

    1-d input is treated as a single-component series (column vector).
    Rows are observations in the candidate temporal order; reversal is
    always an explicit ``x[::-1]`` by the caller, never implicit.
    """
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 1-d or 2-d, got ndim={arr.ndim}")
    if arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one column")
    if arr.shape[0] < min_rows:
        raise InsufficientLengthError(
            f"{name} has {arr.shape[0]} rows, needs at least {min_rows}"
        )
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return arr


def check_coeff_blocks(blocks, *, name: str = "coeffs", allow_empty: bool = False):
    """Validate a list of square K x K coefficient matrices of equal size."""
    mats = [np.asarray(b, dtype=float) for b in blocks]
    if not mats:
        if allow_empty:
            return mats, None
        raise ValueError(f"{name} must contain at least one matrix")
    k = mats[0].shape[0] if mats[0].ndim == 2 else -1
    for i, m in enumerate(mats):
        if m.ndim != 2 or m.shape != (k, k):
            raise ValueError(
                f"{name}[{i}] must be a {k}x{k} matrix, got shape {m.shape}"
            )
        if not np.all(np.isfinite(m)):
            raise ValueError(f"{name}[{i}] contains non-finite entries")
    return mats, k


def check_paired_samples(x, z) -> tuple[np.ndarray, np.ndarray]:
    """Validate two sample blocks with matching row counts (n >= 2)."""
    xa = check_time_series(x, min_rows=2, name="x")
    za = check_time_series(z, min_rows=2, name="z")
    if xa.shape[0] != za.shape[0]:
        raise ValueError(
            f"x and z must have the same number of rows, got {xa.shape[0]} and {za.shape[0]}"
        )
    return xa, za
