"""Gaussian-kernel HSIC: statistic, bandwidth selection and p-values.

The statistic is the biased V-statistic.  Writing K and L for the kernel
matrices of the two sample blocks and H for the centering matrix
``I - (1/n) 11^T``, it is computed in O(n^2) as

    HSIC_b = (1/n^2) * sum(HKH * HLH)

which equals the quadruple-indexed sum
``(1/n^4) * sum_{a,b,c,d} k(x_a, x_b) [l(z_a, z_b) + l(z_c, z_d) - 2 l(z_b, z_c)]``
(the O(n^4) form is kept alive in the test suite as the correctness oracle).

Two null approximations are provided: the moment-matched gamma fit to
``n * HSIC_b`` and a circular-shift permutation scheme that preserves the
serial dependence within each series.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import gamma as gamma_dist

from .exceptions import DegenerateSampleError
from .validation import check_paired_samples, check_time_series

__all__ = [
    "KernelConfig",
    "HsicResult",
    "median_bandwidth",
    "hsic_vstat",
    "hsic_pvalue",
    "compound_gram",
    "test_from_grams",
]

# Numerical floor: statistics within this margin below zero are clipped to 0.
STAT_FLOOR = 1e-12


@dataclass(frozen=True)
class KernelConfig:
    """Gaussian kernel bandwidths for the two sample blocks.

    ``method`` records how the bandwidths were obtained: "fixed",
    "median-heuristic", or "median-compound" for the direction test's
    composite kernel (joint plus per-coordinate Gaussians; the stored
    bandwidths are then the joint-block ones).
    """

    bandwidth_x: float
    bandwidth_z: float
    method: str = "fixed"

    def __post_init__(self):
        for name in ("bandwidth_x", "bandwidth_z"):
            val = getattr(self, name)
            if not np.isfinite(val) or val <= 0:
                raise ValueError(f"{name} must be finite and positive, got {val}")
        if self.method not in ("median-heuristic", "fixed", "median-compound"):
            raise ValueError(f"unknown bandwidth method {self.method!r}")


@dataclass(frozen=True)
class HsicResult:
    statistic: float
    p_value: float | None
    n: int
    config: KernelConfig
    pvalue_method: str = "none"  # "gamma", "shift-permutation" or "none"

    def __post_init__(self):
        if self.statistic < -STAT_FLOOR:
            raise ValueError(f"statistic {self.statistic} below the numerical floor")
        if self.p_value is not None and not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p_value {self.p_value} outside [0, 1]")


def _sq_distances(a: np.ndarray) -> np.ndarray:
    s = np.einsum("ij,ij->i", a, a)
    d2 = s[:, None] + s[None, :] - 2.0 * (a @ a.T)
    np.maximum(d2, 0.0, out=d2)
    return d2


def median_bandwidth(sample) -> float:
    """Median-heuristic bandwidth: sigma with sigma^2 = (1/2) * median of the
    nonzero squared pairwise Euclidean distances.

    Raises DegenerateSampleError when all rows are identical.
    """
    arr = check_time_series(sample, min_rows=2, name="sample")
    d2 = _sq_distances(arr)
    iu = np.triu_indices(arr.shape[0], k=1)
    nonzero = d2[iu][d2[iu] > 0]
    if nonzero.size == 0:
        raise DegenerateSampleError("all sample rows are identical")
    return float(np.sqrt(0.5 * np.median(nonzero)))


def _gaussian_gram(a: np.ndarray, sigma: float) -> np.ndarray:
    return np.exp(_sq_distances(a) / (-2.0 * sigma * sigma))


def _center(k: np.ndarray) -> np.ndarray:
    row = k.mean(axis=0, keepdims=True)
    col = k.mean(axis=1, keepdims=True)
    return k - row - col + k.mean()


def _safe_bandwidth(a: np.ndarray) -> float:
    # A degenerate block makes the centered kernel vanish identically, so
    # the statistic is 0 whatever the bandwidth; 1.0 keeps the kernel defined.
    try:
        return median_bandwidth(a)
    except DegenerateSampleError:
        return 1.0


def compound_gram(block: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """Mean of the joint Gaussian gram matrix and one per coordinate, each
    at its own median-heuristic bandwidth times ``scale``.

    The joint term keeps the kernel characteristic; the per-coordinate
    terms expose dependence that involves only a few coordinates, which a
    single isotropic bandwidth washes out as the dimension grows.  For a
    one-column block this is exactly the plain Gaussian gram.
    """
    gram = _gaussian_gram(block, scale * _safe_bandwidth(block))
    k = block.shape[1]
    if k == 1:
        return gram
    for j in range(k):
        col = block[:, [j]]
        gram = gram + _gaussian_gram(col, scale * _safe_bandwidth(col))
    return gram / (k + 1)


def resolve_config(x: np.ndarray, z: np.ndarray, cfg: KernelConfig | None) -> KernelConfig:
    """Fill in median-heuristic bandwidths when no config is given."""
    if cfg is not None:
        return cfg
    return KernelConfig(
        bandwidth_x=_safe_bandwidth(x),
        bandwidth_z=_safe_bandwidth(z),
        method="median-heuristic",
    )


def _clip(stat: float) -> float:
    return 0.0 if -STAT_FLOOR <= stat < 0.0 else stat


def hsic_vstat(x, z, cfg: KernelConfig | None = None) -> float:
    """Biased HSIC V-statistic between paired samples x (n x d_x) and
    z (n x d_z) with Gaussian kernels.

    With ``cfg=None`` the bandwidths come from the median heuristic applied
    to each block separately.
    """
    xa, za = check_paired_samples(x, z)
    cfg = resolve_config(xa, za, cfg)
    kc = _center(_gaussian_gram(xa, cfg.bandwidth_x))
    lc = _center(_gaussian_gram(za, cfg.bandwidth_z))
    n = xa.shape[0]
    return _clip(float(np.sum(kc * lc)) / (n * n))


def _gamma_pvalue(k: np.ndarray, l: np.ndarray, kc: np.ndarray, lc: np.ndarray,
                  stat: float) -> float:
    """Moment-matched gamma approximation to the null of n * HSIC_b."""
    n = k.shape[0]
    test_stat = n * stat
    var_term = (kc * lc / 6.0) ** 2
    var_hsic = (var_term.sum() - np.trace(var_term)) / (n * (n - 1))
    var_hsic *= 72.0 * (n - 4) * (n - 5) / (n * (n - 1) * (n - 2) * (n - 3))
    mu_x = (k.sum() - np.trace(k)) / (n * (n - 1))
    mu_z = (l.sum() - np.trace(l)) / (n * (n - 1))
    mean_hsic = (1.0 + mu_x * mu_z - mu_x - mu_z) / n
    if var_hsic <= 0 or mean_hsic <= 0:
        # Degenerate kernels (e.g. a constant block): no evidence against
        # independence.
        return 1.0
    shape = mean_hsic**2 / var_hsic
    scale = n * var_hsic / mean_hsic
    return float(gamma_dist.sf(test_stat, a=shape, scale=scale))


def _shift_pvalue(kc: np.ndarray, lc: np.ndarray, stat: float, n_resample: int,
                  rng: np.random.Generator) -> float:
    """Circular-shift permutation p-value.

    z is shifted by offsets drawn uniformly from [n/4, 3n/4], preserving its
    serial dependence; p = (1 + #{shifted >= observed}) / (1 + n_resample).
    """
    n = kc.shape[0]
    lo, hi = n // 4, (3 * n) // 4
    offsets = rng.integers(lo, hi + 1, size=n_resample)
    idx = np.arange(n)
    exceed = 0
    for s in offsets:
        perm = (idx + s) % n
        shifted = float(np.sum(kc * lc[np.ix_(perm, perm)])) / (n * n)
        if shifted >= stat:
            exceed += 1
    return (1.0 + exceed) / (1.0 + n_resample)


def hsic_pvalue(x, z, cfg: KernelConfig | None = None, method: str = "gamma",
                n_resample: int = 200, rng=None) -> HsicResult:
    """HSIC independence test between paired samples.

    Parameters
    ----------
    method : {"gamma", "shift-permutation"}
        "gamma" fits a two-moment gamma null to n * HSIC_b (fast, assumes
        weakly dependent samples); "shift-permutation" recomputes the
        statistic under random circular shifts of z, which respects serial
        dependence within each series.
    n_resample : int
        Number of shifts for the permutation method.
    rng : numpy Generator or seed, optional
        Source of shift offsets; pass an explicit seed for reproducibility.
    """
    xa, za = check_paired_samples(x, z)
    n = xa.shape[0]
    if method == "gamma":
        if n < 10:
            raise ValueError("gamma approximation needs n >= 10")
    elif method == "shift-permutation":
        if n < 20:
            raise ValueError("shift-permutation needs n >= 20")
        if n_resample < 1:
            raise ValueError("n_resample must be >= 1")
    else:
        raise ValueError(f"unknown p-value method {method!r}")
    cfg = resolve_config(xa, za, cfg)
    k = _gaussian_gram(xa, cfg.bandwidth_x)
    l = _gaussian_gram(za, cfg.bandwidth_z)
    stat, p = test_from_grams(k, l, method=method, n_resample=n_resample, rng=rng)
    return HsicResult(statistic=stat, p_value=p, n=n, config=cfg, pvalue_method=method)


def test_from_grams(k: np.ndarray, l: np.ndarray, method: str | None = None,
                    n_resample: int = 200, rng=None) -> tuple[float, float | None]:
    """Statistic (and p-value, unless ``method`` is None) from precomputed
    kernel matrices; used for non-standard kernels such as compound_gram."""
    n = k.shape[0]
    kc, lc = _center(k), _center(l)
    stat = _clip(float(np.sum(kc * lc)) / (n * n))
    if method is None:
        return stat, None
    if method == "gamma":
        return stat, _gamma_pvalue(k, l, kc, lc, stat)
    if method == "shift-permutation":
        return stat, _shift_pvalue(kc, lc, stat, n_resample, np.random.default_rng(rng))
    raise ValueError(f"unknown p-value method {method!r}")
