"""Estimators of conditional-on-extreme quantities for bivariate samples.

Conditional tail distribution / tail dependence coefficient:

- ``tdc_empirical``: joint-exceedance counting above the order-statistic
  threshold.
- ``tdc_quasispectral``: averages the capped ratio weights
  min(y_j / (y * x_j), 1)^alpha over x-exceedances; needs the tail index.
- ``tdc_quasispectral_estimated``: same, with the tail index replaced by a
  Hill estimate on k_alpha upper order statistics.

Conditional tail expectation coefficients:

- ``cte_aleph3``: threshold-scaled average of y over x-exceedances.
- ``cte_aleph4``: ratio-based form, alpha/(alpha-1) times the mean of y/x
  over x-exceedances; requires alpha > 1.

High-quantile extrapolation ``theta_hat`` multiplies a CTE coefficient by the
threshold and the power-law factor (k/(n p))^(1/alpha). ``edm_estimate`` is
the extremal dependence measure, thresholded on norm order statistics rather
than the x margin. ``confidence_interval`` turns a plug-in variance into a
normal interval.

Plug-in variances are second moments of the same weights (the fixed-level
approximation at s = 1); they omit random-threshold corrections, so treat the
derived intervals as approximate. Ties are handled by the nominal-k
convention: exceedances are strict and sums always divide by k.

All estimators are scale invariant under (x, y) -> (c x, c y), permutation
invariant, and pure; sums use exactly rounded accumulation, so results do not
depend on evaluation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.stats import norm as _normal

from .core import BivariateSample, TailEstimate, order_view
from .errors import (
    AlphaNotAboveOne,
    InvalidP,
    MissingVariance,
    NonPositiveThreshold,
    NonPositiveX,
)
from .tail_function import NORMS, norm_values, squared_norm
from .tail_index import hill_estimate

PROBABILITY_ESTIMATORS = frozenset(
    {"tdc_empirical", "tdc_quasispectral", "tdc_quasispectral_estimated"}
)


@dataclass(frozen=True)
class CondTailCurve:
    """Conditional tail distribution estimates along an increasing y grid."""

    y_grid: np.ndarray
    values: np.ndarray
    estimator_id: str
    k: int
    alpha_used: float | None = None

    def __post_init__(self):
        grid = np.asarray(self.y_grid, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if grid.size != vals.size:
            raise ValueError("y_grid and values must have equal length")
        if grid.size == 0 or np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
            raise ValueError("y_grid must be strictly increasing and positive")
        if np.any(vals < 0) or np.any(vals > 1):
            raise ValueError("conditional tail values must lie in [0, 1]")
        if np.any(np.diff(vals) > 0):
            raise ValueError("conditional tail values must be nonincreasing in y")
        grid.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "y_grid", grid)
        object.__setattr__(self, "values", vals)


@dataclass(frozen=True)
class CteExtrapolation:
    """A high-quantile conditional tail expectation, theta_hat(p)."""

    p: float
    theta_hat: float
    aleph_used: float
    alpha_used: float
    extrapolation_factor: float


def _exceedances(sample: BivariateSample, k: int):
    """Threshold plus the (x, y) pairs strictly above it, in input order."""
    view = order_view(sample)
    thr = view.threshold(k)
    mask = sample.x > thr
    return thr, sample.x[mask], sample.y[mask]


def _check_y(y: float) -> None:
    if y <= 0:
        raise ValueError("y must be positive")


def tdc_empirical(sample: BivariateSample, k: int, y: float = 1.0) -> TailEstimate:
    """Share of x-exceedances whose y coordinate also clears y * threshold.

    The plug-in variance equals the value itself (indicator weights square to
    themselves).
    """
    _check_y(y)
    view = order_view(sample)
    thr = view.threshold(k)
    joint = int(np.count_nonzero((sample.x > thr) & (sample.y > y * thr)))
    value = joint / k
    return TailEstimate(
        value=value, k=k, estimator_id="tdc_empirical", plugin_variance=value
    )


def tdc_quasispectral(
    sample: BivariateSample, k: int, y: float = 1.0, *, alpha: float
) -> TailEstimate:
    """Mean of min(y_j / (y x_j), 1)^alpha over x-exceedances, known alpha."""
    _check_y(y)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    _, xe, ye = _exceedances(sample, k)
    if np.any(xe <= 0):
        raise NonPositiveX("an exceedance pair has x <= 0")
    weights = np.minimum(ye / (y * xe), 1.0) ** alpha
    return TailEstimate(
        value=math.fsum(weights) / k,
        k=k,
        estimator_id="tdc_quasispectral",
        plugin_variance=math.fsum(weights * weights) / k,
        alpha_used=alpha,
    )


def tdc_quasispectral_estimated(
    sample: BivariateSample, k: int, k_alpha: int, y: float = 1.0
) -> TailEstimate:
    """Ratio-weight estimator with alpha replaced by a Hill estimate."""
    hill = hill_estimate(order_view(sample), k_alpha)
    est = tdc_quasispectral(sample, k, y, alpha=hill.alpha_hat)
    return replace(
        est,
        estimator_id="tdc_quasispectral_estimated",
        metadata={"k_alpha": k_alpha, "alpha_source": "hill"},
    )


def cond_tail_curve(
    sample: BivariateSample,
    k: int,
    y_grid,
    method: str,
    alpha: float | None = None,
) -> CondTailCurve:
    """Per-y conditional tail distribution estimates along an increasing grid."""
    grid = np.asarray(y_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("y_grid must be a nonempty one-dimensional sequence")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("y_grid must be strictly increasing and positive")
    if method == "empirical":
        values = [tdc_empirical(sample, k, float(y)).value for y in grid]
        return CondTailCurve(grid, np.asarray(values), "tdc_empirical", k)
    if method == "quasispectral":
        if alpha is None:
            raise ValueError("alpha is required for the quasispectral method")
        values = [
            tdc_quasispectral(sample, k, float(y), alpha=alpha).value for y in grid
        ]
        return CondTailCurve(grid, np.asarray(values), "tdc_quasispectral", k, alpha)
    raise ValueError(f"unknown method {method!r}")


def cte_aleph3(sample: BivariateSample, k: int) -> TailEstimate:
    """Threshold-scaled conditional tail expectation coefficient.

    (1/k) * sum of y_j / X_{n:n-k} over x-exceedances. The second-moment
    plug-in is a variance proxy only when the tail index exceeds 2, which is
    noted in the metadata.
    """
    thr, _, ye = _exceedances(sample, k)
    if thr <= 0:
        raise NonPositiveThreshold(f"X_(n-k) = {thr} is not positive")
    terms = ye / thr
    return TailEstimate(
        value=math.fsum(terms) / k,
        k=k,
        estimator_id="cte_aleph3",
        plugin_variance=math.fsum(terms * terms) / k,
        metadata={"variance_note": "second-moment proxy, valid for tail index > 2"},
    )


def cte_aleph4(sample: BivariateSample, k: int, alpha: float) -> TailEstimate:
    """Ratio-based conditional tail expectation coefficient.

    alpha/(alpha - 1) times the mean of y_j / x_j over x-exceedances. The
    ratio form keeps the variance finite even when the tail index is below 2.
    """
    if alpha <= 1:
        raise AlphaNotAboveOne(f"alpha must exceed 1, got {alpha}")
    _, xe, ye = _exceedances(sample, k)
    factor = alpha / (alpha - 1.0)
    terms = ye / xe
    return TailEstimate(
        value=factor * (math.fsum(terms) / k),
        k=k,
        estimator_id="cte_aleph4",
        plugin_variance=(factor * factor) * (math.fsum(terms * terms) / k),
        alpha_used=alpha,
    )


def theta_hat(
    sample: BivariateSample, k: int, p: float, aleph: float, alpha: float
) -> CteExtrapolation:
    """Extrapolated conditional tail expectation at exceedance probability p.

    theta_hat = aleph * X_{n:n-k} * (k / (n p))^(1/alpha). Extrapolation is
    meaningful for p <= k/n (factor >= 1).
    """
    if not 0.0 < p < 1.0:
        raise InvalidP(f"p must lie in (0, 1), got {p}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    view = order_view(sample)
    thr = view.threshold(k)
    # evaluated as (k/n)/p so that p = k/n yields the factor 1.0 exactly
    factor = ((k / sample.n) / p) ** (1.0 / alpha)
    return CteExtrapolation(
        p=p,
        theta_hat=aleph * thr * factor,
        aleph_used=aleph,
        alpha_used=alpha,
        extrapolation_factor=factor,
    )


def edm_estimate(sample: BivariateSample, k: int, norm: str = "l2") -> TailEstimate:
    """Extremal dependence measure: mean of x y / |(x, y)|^2 over norm exceedances.

    Unlike the other estimators this thresholds on order statistics of the
    chosen norm of the pairs, not on the x margin (flagged in the metadata).
    """
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")
    n = sample.n
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    radii = norm_values(sample.x, sample.y, norm)
    thr = float(np.sort(radii, kind="stable")[n - k - 1])
    mask = radii > thr
    xe, ye = sample.x[mask], sample.y[mask]
    terms = (xe * ye) / squared_norm(xe, ye, norm)
    return TailEstimate(
        value=math.fsum(terms) / k,
        k=k,
        estimator_id="edm",
        plugin_variance=math.fsum(terms * terms) / k,
        metadata={"norm": norm, "threshold_scale": "norm order statistic"},
    )


def confidence_interval(est: TailEstimate, level: float) -> tuple[float, float]:
    """Normal interval from the plug-in variance, clipped to the natural range.

    Probability-type estimators clip to [0, 1]; everything else to [0, inf).
    """
    if est.plugin_variance is None:
        raise MissingVariance(f"{est.estimator_id} carries no plug-in variance")
    if not 0.0 < level < 1.0:
        raise ValueError("level must lie in (0, 1)")
    z = float(_normal.ppf(0.5 * (1.0 + level)))
    half = z * math.sqrt(est.plugin_variance / est.k)
    lo, hi = est.value - half, est.value + half
    if est.estimator_id in PROBABILITY_ESTIMATORS:
        return max(lo, 0.0), min(hi, 1.0)
    return max(lo, 0.0), hi
