"""timearrow: detect the temporal direction of multivariate time series.

A series following a linear (vector-autoregressive) model with
non-Gaussian innovations looks different forwards and backwards: only in
the true direction are the model residuals independent of the past.  This
package fits VAR models in both directions, scores residual independence
with the Hilbert-Schmidt Independence Criterion, and reports
``forward`` / ``backward`` / ``undecided``.  It also ships a simulator
for the non-Gaussian noise family used in the identifiability
experiments and a benchmark grid runner.
"""

from .bench import CellResult, GridSpec, emit_results, load_results, run_grid
from .direction import (
    BACKWARD,
    FORWARD,
    UNDECIDED,
    DirectionConfig,
    DirectionReport,
    decide_verdict,
    detect,
    lagged_pairs,
    score_direction,
)
from .estimator import TimeDirectionDetector
from .exceptions import (
    DegenerateSampleError,
    GenerationError,
    InsufficientLengthError,
    NotCausalError,
    NumericalError,
    RankDeficiencyError,
    TimeArrowError,
)
from .hsic import HsicResult, KernelConfig, hsic_pvalue, hsic_vstat, median_bandwidth
from .simulate import (
    SimConfig,
    SimResult,
    gen_coeffs,
    gen_noise,
    simulate_series,
    simulate_var,
    spawn_rng,
)
from .var import (
    CompanionForm,
    Residuals,
    VarModel,
    companion,
    demean,
    difference,
    fit_var,
    is_causal,
    is_nilpotent,
    ma_coefficients,
    reverse_gaussian_var1,
    select_order,
    theoretical_autocov,
)

__version__ = "0.1.0"

__all__ = [
    "BACKWARD",
    "CellResult",
    "CompanionForm",
    "DegenerateSampleError",
    "DirectionConfig",
    "DirectionReport",
    "FORWARD",
    "GenerationError",
    "GridSpec",
    "HsicResult",
    "InsufficientLengthError",
    "KernelConfig",
    "NotCausalError",
    "NumericalError",
    "RankDeficiencyError",
    "Residuals",
    "SimConfig",
    "SimResult",
    "TimeArrowError",
    "TimeDirectionDetector",
    "UNDECIDED",
    "VarModel",
    "companion",
    "decide_verdict",
    "demean",
    "detect",
    "difference",
    "emit_results",
    "fit_var",
    "gen_coeffs",
    "gen_noise",
    "hsic_pvalue",
    "hsic_vstat",
    "is_causal",
    "is_nilpotent",
    "lagged_pairs",
    "load_results",
    "ma_coefficients",
    "median_bandwidth",
    "reverse_gaussian_var1",
    "run_grid",
    "score_direction",
    "select_order",
    "simulate_series",
    "simulate_var",
    "spawn_rng",
    "theoretical_autocov",
]
