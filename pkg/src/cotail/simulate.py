"""Data generators for the two study models and the Monte Carlo harness.

Models
------
LinearParetoModel
    Y = phi * X + sigma * |Z| with X standard Pareto(alpha) (survival
    x^(-alpha) on x >= 1) and Z standard normal, independent of X. The tail
    dependence coefficient is phi^alpha. Draw order: the n Pareto uniforms,
    then the n normals.

BivariateTModel
    (X, Y) = sqrt(W) * (|Z1|, |Z2|) where nu / W is chi-square(nu) and
    (Z1, Z2) are standard normal with correlation rho, built as
    Z2 = rho * Z1 + sqrt(1 - rho^2) * Z2'. Each margin is |t_nu|, so the tail
    index is nu. Draw order: chi-square, then Z1, then Z2'.

The harness ``run_mc`` evaluates a set of estimators over replications; the
replication r uses the generator keyed with ``mix_seed(seed, r)`` so streams
never overlap. Replications are aggregated in index order and execution is
sequential, so summaries are bit-identical across runs. Per-replication
estimator errors are tallied in the cell's failure count instead of aborting
the run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Mapping, Sequence, Union

import numpy as np
from scipy.stats import t as _student_t

from . import rng
from .core import BivariateSample
from .errors import CotailError
from .estimators import (
    cte_aleph3,
    cte_aleph4,
    tdc_empirical,
    tdc_quasispectral,
    tdc_quasispectral_estimated,
)

ESTIMATOR_NAMES = (
    "tdc_empirical",
    "tdc_quasispectral",
    "tdc_quasispectral_estimated",
    "cte_aleph3",
    "cte_aleph4",
)

_TDC_NAMES = frozenset(n for n in ESTIMATOR_NAMES if n.startswith("tdc_"))


@dataclass(frozen=True)
class LinearParetoModel:
    phi: float
    sigma: float
    alpha: float

    def __post_init__(self):
        if not 0.0 < self.phi < 1.0:
            raise ValueError("phi must lie in (0, 1)")
        if self.sigma < 0.0:
            raise ValueError("sigma must be nonnegative (0 is the degenerate case)")
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")

    @property
    def tail_index(self) -> float:
        return self.alpha

    @property
    def tail_dependence(self) -> float:
        return self.phi ** self.alpha


@dataclass(frozen=True)
class BivariateTModel:
    nu: float
    rho: float

    def __post_init__(self):
        if self.nu <= 0.0:
            raise ValueError("nu must be positive")
        if not -1.0 < self.rho < 1.0:
            raise ValueError("rho must lie in (-1, 1)")

    @property
    def tail_index(self) -> float:
        return self.nu

    @property
    def tail_dependence(self) -> float:
        arg = math.sqrt((self.nu + 1.0) * (1.0 - self.rho) / (1.0 + self.rho))
        return float(2.0 * _student_t.sf(arg, df=self.nu + 1.0))


Model = Union[LinearParetoModel, BivariateTModel]


@dataclass(frozen=True)
class ModelConfig:
    model: Model
    n: int
    seed: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")


def sample_linear_pareto(config: ModelConfig) -> BivariateSample:
    model = config.model
    if not isinstance(model, LinearParetoModel):
        raise TypeError("config.model must be a LinearParetoModel")
    gen = rng.generator(config.seed)
    x = rng.pareto(gen, model.alpha, config.n)
    z = rng.standard_normal(gen, config.n)
    return BivariateSample(x, model.phi * x + model.sigma * np.abs(z))


def sample_bivariate_t(config: ModelConfig) -> BivariateSample:
    model = config.model
    if not isinstance(model, BivariateTModel):
        raise TypeError("config.model must be a BivariateTModel")
    gen = rng.generator(config.seed)
    w = model.nu / rng.chi_square(gen, model.nu, config.n)
    z1 = rng.standard_normal(gen, config.n)
    z2 = model.rho * z1 + math.sqrt(1.0 - model.rho ** 2) * rng.standard_normal(
        gen, config.n
    )
    root_w = np.sqrt(w)
    return BivariateSample(root_w * np.abs(z1), root_w * np.abs(z2))


def sample_dataset(config: ModelConfig) -> BivariateSample:
    if isinstance(config.model, LinearParetoModel):
        return sample_linear_pareto(config)
    if isinstance(config.model, BivariateTModel):
        return sample_bivariate_t(config)
    raise TypeError(f"unknown model type {type(config.model).__name__}")


# ---------------------------------------------------------------------------
# Monte Carlo harness
# ---------------------------------------------------------------------------

CellKey = tuple[str, float, Union[float, None]]


@dataclass(frozen=True)
class McCell:
    mean: float
    sd: float
    q05: float
    q25: float
    q50: float
    q75: float
    q95: float
    rep_count: int
    failures: int


@dataclass(frozen=True)
class McSummary:
    """Per-(estimator, k fraction, k_alpha fraction) distribution summaries."""

    cells: Mapping[CellKey, McCell]
    truth: float | None
    y: float
    reps: int


def fraction_to_count(frac: float, n: int) -> int:
    """Nearest-integer order-statistic count for a fraction of n, clamped."""
    if not 0.0 < frac < 1.0:
        raise ValueError(f"fraction must lie in (0, 1), got {frac}")
    return min(max(int(round(frac * n)), 1), n - 1)


def _evaluate(
    name: str,
    sample: BivariateSample,
    k: int,
    k_alpha: int | None,
    y: float,
    alpha_true: float,
) -> float:
    if name == "tdc_empirical":
        return tdc_empirical(sample, k, y).value
    if name == "tdc_quasispectral":
        return tdc_quasispectral(sample, k, y, alpha=alpha_true).value
    if name == "tdc_quasispectral_estimated":
        assert k_alpha is not None
        return tdc_quasispectral_estimated(sample, k, k_alpha, y).value
    if name == "cte_aleph3":
        return cte_aleph3(sample, k).value
    if name == "cte_aleph4":
        return cte_aleph4(sample, k, alpha_true).value
    raise ValueError(f"unknown estimator {name!r}")


def run_mc(
    config: ModelConfig,
    reps: int,
    k_fractions: Sequence[float],
    k_alpha_fractions: Sequence[float] = (),
    estimators: Sequence[str] = ("tdc_empirical", "tdc_quasispectral"),
    y: float = 1.0,
) -> McSummary:
    """Replicate the simulation protocol over estimators and k fractions.

    Known-alpha estimators receive the model's true tail index. The truth
    field carries the model's tail dependence coefficient when a TDC
    estimator is evaluated at y = 1.
    """
    if reps < 1:
        raise ValueError("reps must be at least 1")
    if y <= 0:
        raise ValueError("y must be positive")
    names = list(dict.fromkeys(estimators))
    for name in names:
        if name not in ESTIMATOR_NAMES:
            raise ValueError(f"unknown estimator {name!r}")
    k_fracs = sorted(set(float(f) for f in k_fractions))
    ka_fracs = sorted(set(float(f) for f in k_alpha_fractions))
    if not k_fracs:
        raise ValueError("at least one k fraction is required")
    if "tdc_quasispectral_estimated" in names and not ka_fracs:
        raise ValueError("tdc_quasispectral_estimated needs k_alpha fractions")

    keys: list[CellKey] = []
    for name in names:
        for kf in k_fracs:
            if name == "tdc_quasispectral_estimated":
                keys.extend((name, kf, kaf) for kaf in ka_fracs)
            else:
                keys.append((name, kf, None))

    n = config.n
    alpha_true = config.model.tail_index
    values: dict[CellKey, list[float]] = {key: [] for key in keys}
    failures: dict[CellKey, int] = {key: 0 for key in keys}

    for rep in range(reps):
        sample = sample_dataset(replace(config, seed=rng.mix_seed(config.seed, rep)))
        for key in keys:
            name, kf, kaf = key
            k = fraction_to_count(kf, n)
            ka = fraction_to_count(kaf, n) if kaf is not None else None
            try:
                values[key].append(_evaluate(name, sample, k, ka, y, alpha_true))
            except CotailError:
                failures[key] += 1

    cells: dict[CellKey, McCell] = {}
    for key in keys:
        vals = np.asarray(values[key], dtype=float)
        if vals.size == 0:
            mean = sd = q05 = q25 = q50 = q75 = q95 = float("nan")
        else:
            mean = float(np.mean(vals))
            sd = float(np.std(vals, ddof=1)) if vals.size > 1 else 0.0
            q05, q25, q50, q75, q95 = (
                float(q) for q in np.quantile(vals, [0.05, 0.25, 0.5, 0.75, 0.95])
            )
        cells[key] = McCell(mean, sd, q05, q25, q50, q75, q95, reps, failures[key])

    truth = None
    if y == 1.0 and any(name in _TDC_NAMES for name in names):
        truth = config.model.tail_dependence
    return McSummary(cells=cells, truth=truth, y=y, reps=reps)
