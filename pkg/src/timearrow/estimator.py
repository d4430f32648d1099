"""scikit-learn compatible wrapper around the direction test."""

from __future__ import annotations

from sklearn.base import BaseEstimator

from .direction import DirectionConfig, detect
from .validation import check_time_series

__all__ = ["TimeDirectionDetector"]


class TimeDirectionDetector(BaseEstimator):
    """Detect the temporal direction of a multivariate time series.

    The estimator fits vector-autoregressive models to the series and to
    its row-reversal and tests, via HSIC, in which direction the residuals
    are independent of the lagged values.  Following the clusterer idiom,
    ``fit(X)`` analyses the series ``X`` itself and exposes the outcome as
    fitted attributes; ``fit_predict(X)`` returns the verdict directly.

    Parameters
    ----------
    variant : {"p-value", "neg-statistic"}, default="p-value"
        Score each direction by the independence-test p-value or by the
        negated HSIC statistic.
    sig1, sig2 : float or None
        Decision gap: the better score must exceed ``sig1`` and the worse
        fall below ``sig2``.  Default to 0.1/0.05 for the p-value variant;
        required for "neg-statistic".
    lags : tuple of int, default=(1,)
        Residual/value lags to test; multiple lags are combined according
        to ``multiple_testing``.
    order : int or None, default=None
        Fixed VAR order; ``None`` selects it by AIC up to ``max_order``.
    max_order : int, default=8
    multiple_testing : {"none", "bonferroni"}, default="none"
    pvalue_method : {"gamma", "shift-permutation"}, default="gamma"
    n_resample : int, default=200
        Circular shifts for the permutation method.
    shared_order : bool, default=True
        Reuse the forward-selected order for the backward fit.
    bandwidth_x, bandwidth_z : float or None
        Fixed Gaussian-kernel bandwidths; ``None`` uses the median
        heuristic per direction.
    random_state : int or None
        Seed for any resampling; the same seed drives both directions.

    Attributes
    ----------
    verdict_ : str
        "forward", "backward" or "undecided".
    fw_score_, bw_score_ : float
    order_ : int
        Lag order used for the forward fit.
    report_ : DirectionReport
        Full per-lag diagnostics.
    n_features_in_ : int

    Examples
    --------
    >>> from timearrow import TimeDirectionDetector, SimConfig, simulate_series
    >>> sim = simulate_series(SimConfig(k=2, p=1, t=1000, r=0.5, seed=7))
    >>> TimeDirectionDetector(order=1).fit_predict(sim.series)
    'forward'
    """

    def __init__(self, variant="p-value", sig1=None, sig2=None, lags=(1,),
                 order=None, max_order=8, multiple_testing="none",
                 pvalue_method="gamma", n_resample=200, shared_order=True,
                 bandwidth_x=None, bandwidth_z=None, random_state=None):
        self.variant = variant
        self.sig1 = sig1
        self.sig2 = sig2
        self.lags = lags
        self.order = order
        self.max_order = max_order
        self.multiple_testing = multiple_testing
        self.pvalue_method = pvalue_method
        self.n_resample = n_resample
        self.shared_order = shared_order
        self.bandwidth_x = bandwidth_x
        self.bandwidth_z = bandwidth_z
        self.random_state = random_state

    def _config(self) -> DirectionConfig:
        return DirectionConfig(
            variant=self.variant, sig1=self.sig1, sig2=self.sig2,
            lags=tuple(self.lags), order=self.order, max_order=self.max_order,
            multiple_testing=self.multiple_testing,
            pvalue_method=self.pvalue_method, n_resample=self.n_resample,
            shared_order=self.shared_order, bandwidth_x=self.bandwidth_x,
            bandwidth_z=self.bandwidth_z,
        )

    def fit(self, X, y=None):
        """Run the direction test on the series X (T x K)."""
        arr = check_time_series(X, min_rows=2, name="X")
        report = detect(arr, self._config(), seed=self.random_state)
        self.report_ = report
        self.verdict_ = report.verdict
        self.fw_score_ = report.fw_score
        self.bw_score_ = report.bw_score
        self.order_ = report.order_fw
        self.n_features_in_ = arr.shape[1]
        return self

    def fit_predict(self, X, y=None) -> str:
        """Fit on X and return the verdict."""
        return self.fit(X).verdict_
