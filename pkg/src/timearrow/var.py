"""Vector autoregression core: least-squares estimation, order selection,
companion-form utilities, autocovariances and the Gaussian time-reversal map.

Conventions used throughout this module:

* A series is a T x K array, row t = observation at time t.
* ``fit_var`` estimates the zero-mean model by exact least squares with an
  intercept absorbed through demeaning; the sample column means and the
  (tiny) residual intercept are both stored so the fit reconstructs the
  input exactly.
* Autocovariances are stored as ``gamma[k] = E[x_{t+k} x_t^T]``, i.e. the
  later time index acts on the left.  All formulas below are written in
  this single orientation to avoid the usual transpose ambiguity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import linalg as sla

from .exceptions import (
    InsufficientLengthError,
    NotCausalError,
    NumericalError,
    RankDeficiencyError,
)
from .validation import check_coeff_blocks, check_time_series

__all__ = [
    "VarModel",
    "Residuals",
    "CompanionForm",
    "demean",
    "difference",
    "fit_var",
    "select_order",
    "companion",
    "is_causal",
    "is_nilpotent",
    "ma_coefficients",
    "theoretical_autocov",
    "reverse_gaussian_var1",
]

# Spectral radius must stay below 1 - CAUSALITY_TOL to count as causal;
# eigenvalues sitting exactly on the unit circle are numerically unstable.
CAUSALITY_TOL = 1e-6

# Condition-number ceiling above which a Gram/covariance matrix is treated
# as rank deficient.
COND_LIMIT = 1e12

NILPOTENT_TOL = 1e-10


@dataclass(frozen=True)
class VarModel:
    """A fitted (or specified) VAR(p) model.

    Attributes
    ----------
    order : int
        Lag order p >= 1.
    coeffs : list of (K, K) ndarray
        Coefficient matrices, ``coeffs[j-1]`` multiplying the j-th lag.
    noise_cov : (K, K) ndarray
        Residual covariance, ``Z^T Z / (T - p)`` for a fitted model.
    mean : (K,) ndarray
        Column means subtracted before fitting.
    intercept : (K,) ndarray
        Residual intercept of the least-squares fit on the demeaned data
        (zero for an exactly zero-mean series).
    """

    order: int
    coeffs: list[np.ndarray]
    noise_cov: np.ndarray
    mean: np.ndarray
    intercept: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        coeffs, k = check_coeff_blocks(self.coeffs, name="coeffs")
        if self.order != len(coeffs):
            raise ValueError(f"order={self.order} but {len(coeffs)} coefficient matrices")
        if self.order < 1:
            raise ValueError("order must be >= 1")
        object.__setattr__(self, "coeffs", coeffs)
        cov = np.asarray(self.noise_cov, dtype=float)
        if cov.shape != (k, k):
            raise ValueError(f"noise_cov must be {k}x{k}, got {cov.shape}")
        if np.max(np.abs(cov - cov.T)) > 1e-10:
            raise ValueError("noise_cov must be symmetric within 1e-10")
        object.__setattr__(self, "noise_cov", cov)
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        if mean.shape != (k,):
            raise ValueError(f"mean must have length {k}")
        object.__setattr__(self, "mean", mean)
        icpt = self.intercept
        icpt = np.zeros(k) if icpt is None else np.asarray(icpt, dtype=float).reshape(-1)
        if icpt.shape != (k,):
            raise ValueError(f"intercept must have length {k}")
        object.__setattr__(self, "intercept", icpt)

    @property
    def k(self) -> int:
        return self.coeffs[0].shape[0]

    def companion_form(self) -> "CompanionForm":
        return companion(self.coeffs, [])


@dataclass(frozen=True)
class Residuals:
    """Fitted innovations; row i corresponds to time index ``offset + i``."""

    values: np.ndarray
    offset: int

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise ValueError("residual values must be 2-d")
        object.__setattr__(self, "values", vals)
        if self.offset < 0:
            raise ValueError("offset must be >= 0")

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class CompanionForm:
    """The K(p+q)-dimensional VAR(1) lift of a VARMA(p, q) coefficient set."""

    upsilon: np.ndarray
    k: int
    p: int
    q: int

    def __post_init__(self):
        mat = np.asarray(self.upsilon, dtype=float)
        dim = self.k * (self.p + self.q)
        if mat.shape != (dim, dim):
            raise ValueError(f"companion matrix must be {dim}x{dim}, got {mat.shape}")
        object.__setattr__(self, "upsilon", mat)

    @property
    def dim(self) -> int:
        return self.upsilon.shape[0]


def demean(x) -> tuple[np.ndarray, np.ndarray]:
    """Subtract column means; returns (demeaned series, means)."""
    arr = check_time_series(x)
    mean = arr.mean(axis=0)
    return arr - mean, mean


def difference(x, d: int = 1) -> np.ndarray:
    """Apply the d-th order difference along time, dropping the first d rows."""
    arr = check_time_series(x)
    if d < 1:
        raise ValueError("difference order d must be >= 1")
    if arr.shape[0] <= d:
        raise InsufficientLengthError(
            f"series of length {arr.shape[0]} cannot be differenced {d} times"
        )
    return np.diff(arr, n=d, axis=0)


def _lagged_design(x: np.ndarray, p: int, start: int) -> np.ndarray:
    """Stack [x_{t-1}, ..., x_{t-p}] rows for t = start .. T-1."""
    T = x.shape[0]
    return np.hstack([x[start - j : T - j] for j in range(1, p + 1)])


def _ols(y: np.ndarray, w: np.ndarray):
    """Least squares with intercept via window demeaning.

    Returns (B, intercept, residuals) where ``y ~ w @ B + intercept``.
    Raises RankDeficiencyError when the regressor Gram matrix has condition
    number above COND_LIMIT.
    """
    wbar = w.mean(axis=0)
    ybar = y.mean(axis=0)
    wc = w - wbar
    yc = y - ybar
    gram = wc.T @ wc
    if np.linalg.cond(gram) > COND_LIMIT:
        raise RankDeficiencyError(
            "regressor Gram matrix is numerically singular; the series has "
            "degenerate (constant or collinear) components"
        )
    b = np.linalg.solve(gram, wc.T @ yc)
    intercept = ybar - wbar @ b
    resid = y - w @ b - intercept
    return b, intercept, resid


def fit_var(x, p: int) -> tuple[VarModel, Residuals]:
    """Fit a VAR(p) model by multivariate least squares.

    The series is demeaned internally (the mean is recorded on the model)
    and the coefficients minimise the summed squared one-step errors over
    t = p .. T-1.  The residual covariance is ``Z^T Z / (T - p)``.

    Raises
    ------
    InsufficientLengthError
        If T < K*p + p + 1 (under-determined system).
    RankDeficiencyError
        If the regressor Gram matrix has condition number above 1e12.
    """
    arr = check_time_series(x)
    if p < 1:
        raise ValueError("lag order p must be >= 1")
    T, K = arr.shape
    if T < K * p + p + 1:
        raise InsufficientLengthError(
            f"need T >= K*p + p + 1 = {K * p + p + 1} rows to fit VAR({p}) on "
            f"a {K}-dimensional series, got {T}"
        )
    w0, mean = arr - arr.mean(axis=0), arr.mean(axis=0)
    y = w0[p:]
    design = _lagged_design(w0, p, p)
    b, intercept, resid = _ols(y, design)
    coeffs = [b[(j - 1) * K : j * K].T.copy() for j in range(1, p + 1)]
    noise_cov = resid.T @ resid / (T - p)
    noise_cov = (noise_cov + noise_cov.T) / 2.0
    model = VarModel(order=p, coeffs=coeffs, noise_cov=noise_cov, mean=mean,
                     intercept=intercept)
    return model, Residuals(values=resid, offset=p)


def select_order(x, p_max: int) -> int:
    """Pick the lag order in {1, ..., p_max} minimising multivariate AIC.

    All candidate orders are fitted on the common sample window
    t = p_max .. T-1 so the criteria are comparable:
    ``AIC(p) = ln det(Sigma_p) + 2 p K^2 / T_eff`` with the maximum
    likelihood (divide by T_eff) residual covariance.
    """
    arr = check_time_series(x)
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    T, K = arr.shape
    if T < K * p_max + p_max + 1:
        raise InsufficientLengthError(
            f"need T >= {K * p_max + p_max + 1} rows to compare orders up to {p_max}"
        )
    w0 = arr - arr.mean(axis=0)
    t_eff = T - p_max
    y = w0[p_max:]
    full_design = _lagged_design(w0, p_max, p_max)
    best_p, best_aic = 1, np.inf
    for p in range(1, p_max + 1):
        design = full_design[:, : p * K]
        _, _, resid = _ols(y, design)
        sigma = resid.T @ resid / t_eff
        sign, logdet = np.linalg.slogdet(sigma)
        logdet = -np.inf if sign <= 0 else logdet
        aic = logdet + 2.0 * p * K * K / t_eff
        if aic < best_aic:
            best_p, best_aic = p, aic
    return best_p


def companion(phis, thetas=()) -> CompanionForm:
    """Assemble the VAR(1) companion lift of a VARMA(p, q) coefficient set.

    The first K rows are ``[Phi_1 ... Phi_p Theta_1 ... Theta_q]``;
    identity blocks sit on the block sub-diagonal of the AR and MA parts,
    and the MA-to-AR block is zero.
    """
    phi_mats, k = check_coeff_blocks(phis, name="phis")
    theta_mats, k2 = check_coeff_blocks(thetas, name="thetas", allow_empty=True)
    if theta_mats and k2 != k:
        raise ValueError(f"thetas are {k2}x{k2} but phis are {k}x{k}")
    p, q = len(phi_mats), len(theta_mats)
    dim = k * (p + q)
    ups = np.zeros((dim, dim))
    ups[:k, : k * p] = np.hstack(phi_mats)
    if q:
        ups[:k, k * p :] = np.hstack(theta_mats)
    eye = np.eye(k)
    for i in range(1, p):
        ups[i * k : (i + 1) * k, (i - 1) * k : i * k] = eye
    for i in range(1, q):
        r = (p + i) * k
        ups[r : r + k, r - k : r] = eye
    return CompanionForm(upsilon=ups, k=k, p=p, q=q)


def is_causal(cf: CompanionForm, tol: float = CAUSALITY_TOL) -> tuple[bool, float]:
    """Check causality via the companion spectral radius.

    Returns ``(radius < 1 - tol, radius)``.
    """
    try:
        eigvals = np.linalg.eigvals(cf.upsilon)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigenvalue computation failed: {exc}") from exc
    radius = float(np.max(np.abs(eigvals))) if eigvals.size else 0.0
    return radius < 1.0 - tol, radius


def is_nilpotent(cf: CompanionForm) -> bool:
    """True iff Upsilon^n vanishes within 1e-10 (n = matrix dimension)."""
    n = cf.dim
    power = np.linalg.matrix_power(cf.upsilon, n)
    return bool(np.max(np.abs(power)) <= NILPOTENT_TOL)


def ma_coefficients(cf: CompanionForm, n: int) -> list[np.ndarray]:
    """Moving-average coefficients Psi_0 .. Psi_n of a causal VARMA process.

    Uses the companion lift: with the state noise entering at block 0 (and
    block p for the MA part), ``Psi_j`` is the top K rows of ``Upsilon^j``
    applied to the noise injection matrix.  For a pure VAR this is the
    top-left K x K block of ``Upsilon^j``; ``Psi_0`` is the identity.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    causal, radius = is_causal(cf)
    if not causal:
        raise NotCausalError(
            f"MA(inf) expansion requires a causal model (spectral radius {radius:.6g})"
        )
    k, p, q = cf.k, cf.p, cf.q
    inject = np.zeros((cf.dim, k))
    inject[:k] = np.eye(k)
    if q:
        inject[k * p : k * p + k] = np.eye(k)
    psis = [np.eye(k)]
    state = inject.copy()
    for _ in range(n):
        state = cf.upsilon @ state
        psis.append(state[:k].copy())
    return psis


def theoretical_autocov(model: VarModel, h: int) -> list[np.ndarray]:
    """Autocovariances Gamma_0 .. Gamma_h of a causal VAR(1) model.

    ``Gamma_0`` solves the discrete Lyapunov equation
    ``Gamma_0 = Phi Gamma_0 Phi^T + Sigma`` and
    ``Gamma_k = Phi Gamma_{k-1}`` in the stored orientation
    ``Gamma_k = E[x_{t+k} x_t^T]`` (the map acts on the later index).
    """
    if model.order != 1:
        raise ValueError("theoretical_autocov requires a VAR(1) model")
    if h < 0:
        raise ValueError("h must be >= 0")
    phi = model.coeffs[0]
    causal, radius = is_causal(model.companion_form())
    if not causal:
        raise NotCausalError(
            f"Lyapunov solve requires a causal model (spectral radius {radius:.6g})"
        )
    gamma0 = sla.solve_discrete_lyapunov(phi, model.noise_cov)
    gamma0 = (gamma0 + gamma0.T) / 2.0
    gammas = [gamma0]
    for _ in range(h):
        gammas.append(phi @ gammas[-1])
    return gammas


def reverse_gaussian_var1(model: VarModel) -> np.ndarray:
    """Coefficient matrix of the time-reversed representation of a causal
    Gaussian VAR(1): the matrix ``R`` with ``x_t = R x_{t+1} + noise``.

    In the stored autocovariance orientation this is
    ``R = Gamma_1^T Gamma_0^{-1}``.  For a Gaussian process the reversal
    noise is independent of all later values; the cross-covariance
    ``E[noise_t x_{t+k}^T] = Gamma_k^T - R Gamma_{k-1}^T`` vanishes for
    every k >= 1.
    """
    gamma0, gamma1 = theoretical_autocov(model, 1)
    if np.linalg.cond(gamma0) > COND_LIMIT:
        raise RankDeficiencyError(
            "Gamma_0 is numerically singular; the process has degenerate components"
        )
    return np.linalg.solve(gamma0.T, gamma1).T
