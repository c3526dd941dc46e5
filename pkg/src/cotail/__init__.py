"""Nonparametric conditional-on-extreme-event estimation for bivariate heavy tails."""

from .core import (
    BivariateSample,
    OrderedView,
    TailEstimate,
    exceedance_indices,
    order_view,
)
from .errors import (
    AlphaNotAboveOne,
    CotailError,
    InvalidP,
    MissingVariance,
    NegativeValue,
    NonPositivePrice,
    NonPositiveThreshold,
    NonPositiveX,
    ParseError,
    ZeroSpread,
)
from .estimators import (
    CondTailCurve,
    CteExtrapolation,
    cond_tail_curve,
    confidence_interval,
    cte_aleph3,
    cte_aleph4,
    edm_estimate,
    tdc_empirical,
    tdc_quasispectral,
    tdc_quasispectral_estimated,
    theta_hat,
)
from .simulate import (
    BivariateTModel,
    LinearParetoModel,
    McCell,
    McSummary,
    ModelConfig,
    run_mc,
    sample_bivariate_t,
    sample_dataset,
    sample_linear_pareto,
)
from .tail_function import (
    TailFunctionSpec,
    builtin_specs,
    capped_ratio_power,
    coordinate_ratio,
    joint_exceedance,
    margin_exceedance,
    normalized_product,
    second_coordinate,
    tef_fixed,
    tef_random,
    tef_random_grid,
)
from .tail_index import HillEstimate, hill_estimate

__all__ = [
    "AlphaNotAboveOne",
    "BivariateSample",
    "BivariateTModel",
    "CondTailCurve",
    "CotailError",
    "CteExtrapolation",
    "HillEstimate",
    "InvalidP",
    "LinearParetoModel",
    "McCell",
    "McSummary",
    "MissingVariance",
    "ModelConfig",
    "NegativeValue",
    "NonPositivePrice",
    "NonPositiveThreshold",
    "NonPositiveX",
    "OrderedView",
    "ParseError",
    "TailEstimate",
    "TailFunctionSpec",
    "ZeroSpread",
    "builtin_specs",
    "capped_ratio_power",
    "cond_tail_curve",
    "confidence_interval",
    "coordinate_ratio",
    "cte_aleph3",
    "cte_aleph4",
    "edm_estimate",
    "exceedance_indices",
    "hill_estimate",
    "joint_exceedance",
    "margin_exceedance",
    "normalized_product",
    "order_view",
    "run_mc",
    "sample_bivariate_t",
    "sample_dataset",
    "sample_linear_pareto",
    "second_coordinate",
    "tdc_empirical",
    "tdc_quasispectral",
    "tdc_quasispectral_estimated",
    "tef_fixed",
    "tef_random",
    "tef_random_grid",
    "theta_hat",
]
