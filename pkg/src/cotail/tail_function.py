"""Generic weighted tail-exceedance averages.

A :class:`TailFunctionSpec` bundles a nonnegative weight ``psi``, homogeneous
of degree ``gamma``, with an inclusion region. Membership of a pair (x, y) in
the scaled region s*u*C is evaluated as ``region(x / (s*u), y / (s*u))``; for
every built-in region this makes scaled copies nested, so shrinking s only
enlarges the included set.

``psi`` and ``region`` must accept equal-length numpy arrays and evaluate
elementwise. ``psi`` is only ever evaluated on points inside the region, so
it may be undefined elsewhere (coordinate ratios at x = 0, for instance).

Two evaluation modes exist:

- ``tef_fixed`` uses a deterministic level u together with the caller-supplied
  survival mass ``fbar_u`` at that level. The survival mass is only knowable
  in simulations, so this form is a simulation-side diagnostic.
- ``tef_random`` replaces the level with the order statistic X_{n:n-k} and the
  normalization with the nominal k. With ``normalize_psi_by_threshold`` the
  psi arguments are scaled by the same order statistic (the fully data-driven
  form every estimator in this package uses); otherwise the caller must pass
  the deterministic u that scales the psi arguments.

Sums are accumulated with ``math.fsum`` (exactly rounded), so results do not
depend on summation order and are bit-reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .core import BivariateSample, order_view
from .errors import NonPositiveThreshold

Weight = Callable[[np.ndarray, np.ndarray], np.ndarray]
Region = Callable[[np.ndarray, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class TailFunctionSpec:
    """Homogeneous weight plus inclusion region defining a tail functional."""

    psi: Weight
    gamma: float
    region: Region
    name: str = ""


# ---------------------------------------------------------------------------
# norms shared by the built-in specs and the dependence-measure estimator
# ---------------------------------------------------------------------------

NORMS = ("l2", "l1", "linf")


def norm_values(x: np.ndarray, y: np.ndarray, norm: str) -> np.ndarray:
    if norm == "l2":
        return np.sqrt(x * x + y * y)
    if norm == "l1":
        return x + y
    if norm == "linf":
        return np.maximum(x, y)
    raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")


def squared_norm(x: np.ndarray, y: np.ndarray, norm: str) -> np.ndarray:
    # l2 avoids the sqrt round-trip so x = y gives the ratio 1/2 exactly
    if norm == "l2":
        return x * x + y * y
    if norm == "l1":
        s = x + y
        return s * s
    if norm == "linf":
        m = np.maximum(x, y)
        return m * m
    raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")


# ---------------------------------------------------------------------------
# built-in specs
# ---------------------------------------------------------------------------

def margin_exceedance() -> TailFunctionSpec:
    """psi = 1 on {x1 > 1}: the plain exceedance counter."""
    return TailFunctionSpec(
        psi=lambda u, v: np.ones_like(u),
        gamma=0.0,
        region=lambda u, v: u > 1.0,
        name="margin_exceedance",
    )


def joint_exceedance(y_cut: float = 1.0) -> TailFunctionSpec:
    """psi = 1 on {x1 > 1, x2 > y_cut}: joint exceedance counting."""
    if y_cut <= 0:
        raise ValueError("y_cut must be positive")
    return TailFunctionSpec(
        psi=lambda u, v: np.ones_like(u),
        gamma=0.0,
        region=lambda u, v: (u > 1.0) & (v > y_cut),
        name=f"joint_exceedance(y={y_cut})",
    )


def capped_ratio_power(alpha: float, y_cut: float = 1.0) -> TailFunctionSpec:
    """psi = min(x2 / (y_cut * x1), 1)^alpha on {x1 > 1}."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if y_cut <= 0:
        raise ValueError("y_cut must be positive")
    return TailFunctionSpec(
        psi=lambda u, v: np.minimum(v / (y_cut * u), 1.0) ** alpha,
        gamma=0.0,
        region=lambda u, v: u > 1.0,
        name=f"capped_ratio_power(alpha={alpha}, y={y_cut})",
    )


def second_coordinate() -> TailFunctionSpec:
    """psi = x2 on {x1 > 1}, homogeneous of degree 1."""
    return TailFunctionSpec(
        psi=lambda u, v: v,
        gamma=1.0,
        region=lambda u, v: u > 1.0,
        name="second_coordinate",
    )


def coordinate_ratio() -> TailFunctionSpec:
    """psi = x2 / x1 on {x1 > 1}."""
    return TailFunctionSpec(
        psi=lambda u, v: v / u,
        gamma=0.0,
        region=lambda u, v: u > 1.0,
        name="coordinate_ratio",
    )


def normalized_product(norm: str = "l2") -> TailFunctionSpec:
    """psi = x1 * x2 / |x|^2 on {|x| > 1}: the dependence-measure weight."""
    if norm not in NORMS:
        raise ValueError(f"unknown norm {norm!r}, expected one of {NORMS}")
    return TailFunctionSpec(
        psi=lambda u, v: (u * v) / squared_norm(u, v, norm),
        gamma=0.0,
        region=lambda u, v: norm_values(u, v, norm) > 1.0,
        name=f"normalized_product({norm})",
    )


def builtin_specs() -> list[TailFunctionSpec]:
    """All built-in specs, for homogeneity and nesting property checks."""
    return [
        margin_exceedance(),
        joint_exceedance(0.5),
        joint_exceedance(1.0),
        joint_exceedance(2.0),
        capped_ratio_power(2.0),
        capped_ratio_power(4.0, y_cut=1.5),
        second_coordinate(),
        coordinate_ratio(),
        normalized_product("l2"),
        normalized_product("l1"),
        normalized_product("linf"),
    ]


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _weighted_sum(
    x: np.ndarray, y: np.ndarray, spec: TailFunctionSpec, scale: float, denom: float
) -> float:
    mask = np.asarray(spec.region(x / scale, y / scale), dtype=bool)
    if not mask.any():
        return 0.0
    terms = np.asarray(spec.psi(x[mask] / denom, y[mask] / denom), dtype=float)
    return math.fsum(terms)


def tef_fixed(
    sample: BivariateSample,
    spec: TailFunctionSpec,
    u: float,
    s: float,
    fbar_u: float,
) -> float:
    """Tail functional at the deterministic level u.

    Returns (1 / (n * fbar_u)) * sum_j psi(x_j/u, y_j/u) * 1{(x_j, y_j) in s*u*C}
    where fbar_u is the caller-supplied survival mass at u.
    """
    if u <= 0:
        raise ValueError("u must be positive")
    if s <= 0:
        raise ValueError("s must be positive")
    if not 0 < fbar_u <= 1:
        raise ValueError("fbar_u must lie in (0, 1]")
    total = _weighted_sum(sample.x, sample.y, spec, scale=s * u, denom=u)
    return total / (sample.n * fbar_u)


def tef_random(
    sample: BivariateSample,
    spec: TailFunctionSpec,
    k: int,
    s: float = 1.0,
    normalize_psi_by_threshold: bool = True,
    u: float | None = None,
) -> float:
    """Tail functional at the random level X_{n:n-k}, normalized by nominal k.

    With ``normalize_psi_by_threshold`` the psi arguments are scaled by the
    order statistic itself; otherwise they are scaled by the deterministic
    level ``u``, which must then be supplied (simulation-side use only). The
    inclusion region is always scaled by s * X_{n:n-k}.
    """
    if s <= 0:
        raise ValueError("s must be positive")
    view = order_view(sample)
    thr = view.threshold(k)
    if thr <= 0:
        raise NonPositiveThreshold(f"X_(n-k) = {thr} is not positive")
    if normalize_psi_by_threshold:
        denom = thr
    else:
        if u is None:
            raise ValueError("u is required when psi is scaled by a deterministic level")
        if u <= 0:
            raise ValueError("u must be positive")
        denom = u
    return _weighted_sum(sample.x, sample.y, spec, scale=s * thr, denom=denom) / k


def tef_random_grid(
    sample: BivariateSample,
    spec: TailFunctionSpec,
    k: int,
    s_values: Sequence[float],
    normalize_psi_by_threshold: bool = True,
    u: float | None = None,
) -> np.ndarray:
    """Evaluate ``tef_random`` over a grid of s values (grid choice is yours)."""
    return np.asarray(
        [
            tef_random(sample, spec, k, s, normalize_psi_by_threshold, u)
            for s in s_values
        ],
        dtype=float,
    )
