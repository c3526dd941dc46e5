import math

import numpy as np
import pytest

import reference
from cotail import (
    AlphaNotAboveOne,
    BivariateSample,
    InvalidP,
    LinearParetoModel,
    MissingVariance,
    ModelConfig,
    NonPositiveThreshold,
    TailEstimate,
    cond_tail_curve,
    confidence_interval,
    cte_aleph3,
    cte_aleph4,
    edm_estimate,
    order_view,
    sample_linear_pareto,
    tdc_empirical,
    tdc_quasispectral,
    tdc_quasispectral_estimated,
    theta_hat,
)
from cotail import rng as crng


def pareto_sample(seed, n, alpha=4.0, ratio=None):
    gen = crng.generator(seed)
    x = crng.pareto(gen, alpha, n)
    y = x.copy() if ratio is None else ratio * x
    return BivariateSample(x, y)


# ---------------------------------------------------------------------------
# conditional tail distribution estimators
# ---------------------------------------------------------------------------

def test_tdc_empirical_identical_margins():
    s = pareto_sample(1, 50)
    for k in (1, 10, 49):
        est = tdc_empirical(s, k, 1.0)
        assert est.value == 1.0
        assert est.plugin_variance == 1.0


def test_tdc_empirical_zero_y():
    x = np.linspace(1.0, 9.0, 20)
    s = BivariateSample(x, np.zeros_like(x))
    for y in (0.5, 1.0, 3.0):
        assert tdc_empirical(s, 5, y).value == 0.0


def test_tdc_empirical_bruteforce_count():
    xs = [1.0, 7.0, 3.5, 2.0, 9.0, 4.0, 8.0, 6.5, 0.5, 5.0,
          1.5, 7.5, 2.5, 9.5, 4.5, 8.5, 6.0, 0.25, 5.5, 3.0]
    ys = [5.0, 8.0, 1.0, 9.0, 7.5, 2.0, 8.5, 0.5, 3.0, 9.5,
          4.0, 6.0, 2.5, 7.0, 1.5, 9.0, 0.75, 5.5, 3.5, 6.5]
    s = BivariateSample(xs, ys)
    est = tdc_empirical(s, 5, 1.0)
    assert est.value == reference.tdc_empirical(xs, ys, 5, 1.0)


def test_tdc_quasispectral_proportional_pair():
    s = pareto_sample(2, 200, ratio=0.8)
    for k in (1, 20, 100, 199):
        est = tdc_quasispectral(s, k, 1.0, alpha=4.0)
        assert est.value == pytest.approx(0.8 ** 4, rel=1e-12)
    # dyadic slope makes the weights exactly representable
    s2 = pareto_sample(3, 100, ratio=0.5)
    assert tdc_quasispectral(s2, 25, 1.0, alpha=4.0).value == 0.5 ** 4


def test_tdc_quasispectral_identity_pair():
    s = pareto_sample(4, 80)
    for alpha in (0.5, 1.0, 4.0, 11.0):
        assert tdc_quasispectral(s, 20, 1.0, alpha=alpha).value == 1.0


def test_tdc_quasispectral_bruteforce():
    xs = [2.0, 5.0, 1.0, 8.0, 3.0, 0.5, 7.0, 4.0, 6.0, 9.0]
    ys = [3.0, 2.0, 4.0, 5.0, 0.0, 1.0, 9.0, 2.5, 8.0, 3.5]
    s = BivariateSample(xs, ys)
    est = tdc_quasispectral(s, 4, 1.5, alpha=2.0)
    want_value, want_var = reference.tdc_quasispectral(xs, ys, 4, 1.5, 2.0)
    assert est.value == want_value
    assert est.plugin_variance == want_var


def test_tdc_quasispectral_variance_below_value():
    gen = crng.generator(6)
    x = crng.pareto(gen, 3.0, 300)
    y = x * crng.open_uniform(gen, 300)
    s = BivariateSample(x, y)
    for y_level in (1.0, 1.5, 4.0):
        est = tdc_quasispectral(s, 60, y_level, alpha=3.0)
        assert est.plugin_variance <= est.value


def test_tdc_methods_nonincreasing_in_alpha():
    gen = crng.generator(8)
    x = crng.pareto(gen, 3.0, 150)
    y = x * crng.open_uniform(gen, 150)
    s = BivariateSample(x, y)
    values = [tdc_quasispectral(s, 30, 1.0, alpha=a).value for a in (1.0, 2.0, 4.0, 8.0)]
    assert all(b <= a for a, b in zip(values, values[1:]))


def test_tdc_estimated_identity_pair():
    s = pareto_sample(9, 120)
    est = tdc_quasispectral_estimated(s, 12, 60)
    assert est.value == 1.0
    assert est.estimator_id == "tdc_quasispectral_estimated"
    assert est.metadata["k_alpha"] == 60
    assert est.alpha_used > 0


def test_tdc_estimated_matches_composition():
    xs = [2.0, 5.0, 1.0, 8.0, 3.0, 0.5, 7.0, 4.0, 6.0, 9.0]
    ys = [3.0, 2.0, 4.0, 5.0, 0.0, 1.0, 9.0, 2.5, 8.0, 3.5]
    s = BivariateSample(xs, ys)
    est = tdc_quasispectral_estimated(s, 3, 5)
    value, variance, alpha_hat = reference.tdc_quasispectral_estimated(xs, ys, 3, 5)
    assert est.value == value
    assert est.plugin_variance == variance
    assert est.alpha_used == alpha_hat


# ---------------------------------------------------------------------------
# conditional tail curves
# ---------------------------------------------------------------------------

def test_curve_hand_values_proportional():
    s = pareto_sample(10, 60, ratio=0.8)
    curve = cond_tail_curve(s, 15, [0.5, 0.8, 1.0], "quasispectral", alpha=4.0)
    assert curve.values[0] == 1.0
    assert curve.values[1] == 1.0  # ratio hits the cap exactly at y = phi
    assert curve.values[2] == pytest.approx(0.8 ** 4, rel=1e-12)


def test_curve_vanishes_beyond_max_ratio():
    s = pareto_sample(11, 40, ratio=0.7)
    curve = cond_tail_curve(s, 10, [1.0, 2.0, 50.0], "empirical")
    assert curve.values[-1] == 0.0


def test_curve_methods_agree_at_scale():
    config = ModelConfig(LinearParetoModel(0.8, 0.1, 4.0), n=100_000, seed=12)
    sample = sample_linear_pareto(config)
    grid = [0.6, 0.8, 1.0, 1.2]
    emp = cond_tail_curve(sample, 1000, grid, "empirical")
    qs = cond_tail_curve(sample, 1000, grid, "quasispectral", alpha=4.0)
    assert np.all(np.abs(emp.values - qs.values) < 0.05)


def test_curve_validation():
    s = pareto_sample(13, 30)
    with pytest.raises(ValueError):
        cond_tail_curve(s, 5, [1.0, 1.0], "empirical")
    with pytest.raises(ValueError):
        cond_tail_curve(s, 5, [2.0, 1.0], "empirical")
    with pytest.raises(ValueError):
        cond_tail_curve(s, 5, [1.0, 2.0], "quasispectral")
    with pytest.raises(ValueError):
        cond_tail_curve(s, 5, [1.0, 2.0], "nope")


# ---------------------------------------------------------------------------
# conditional tail expectation
# ---------------------------------------------------------------------------

def test_cte_aleph3_identity_pair_at_least_one():
    s = pareto_sample(14, 100)
    est = cte_aleph3(s, 25)
    assert est.value >= 1.0
    assert "variance_note" in est.metadata


def test_cte_aleph3_zero_y():
    x = np.linspace(1.0, 5.0, 30)
    s = BivariateSample(x, np.zeros_like(x))
    assert cte_aleph3(s, 10).value == 0.0


def test_cte_aleph3_nonpositive_threshold():
    s = BivariateSample([0.0, 0.0, 0.0, 2.0], [1.0, 1.0, 1.0, 1.0])
    with pytest.raises(NonPositiveThreshold):
        cte_aleph3(s, 3)


def test_cte_aleph4_identity_pair_exact():
    s = pareto_sample(15, 90)
    for alpha in (1.5, 2.0, 4.0):
        est = cte_aleph4(s, 30, alpha)
        assert est.value == alpha / (alpha - 1.0)


def test_cte_aleph4_alpha_boundary():
    s = pareto_sample(16, 20)
    with pytest.raises(AlphaNotAboveOne):
        cte_aleph4(s, 5, 1.0)
    with pytest.raises(AlphaNotAboveOne):
        cte_aleph4(s, 5, 0.5)


def test_cte_aleph4_half_slope_exact():
    s = pareto_sample(17, 64, ratio=0.5)
    for k in (1, 8, 32, 63):
        est = cte_aleph4(s, k, 4.0)
        assert est.value == (4.0 / 3.0) * 0.5


def test_cte_estimators_agree_on_linear_model():
    config = ModelConfig(LinearParetoModel(0.8, 0.1, 4.0), n=100_000, seed=18)
    sample = sample_linear_pareto(config)
    a3 = cte_aleph3(sample, 1000).value
    a4 = cte_aleph4(sample, 1000, 4.0).value
    assert abs(a3 - a4) < 0.08


# ---------------------------------------------------------------------------
# extrapolation
# ---------------------------------------------------------------------------

def test_theta_no_extrapolation_is_exact():
    s = pareto_sample(19, 500)
    k = 50
    out = theta_hat(s, k, p=k / s.n, aleph=1.234, alpha=4.0)
    assert out.extrapolation_factor == 1.0
    assert out.theta_hat == 1.234 * order_view(s).threshold(k)


def test_theta_hand_factor():
    s = pareto_sample(20, 1000)
    out = theta_hat(s, 100, p=0.01, aleph=2.0, alpha=4.0)
    assert out.extrapolation_factor == pytest.approx(10.0 ** 0.25, rel=1e-12)
    assert out.theta_hat == pytest.approx(
        2.0 * order_view(s).threshold(100) * 10.0 ** 0.25, rel=1e-12
    )


def test_theta_invalid_p():
    s = pareto_sample(21, 50)
    for p in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(InvalidP):
            theta_hat(s, 10, p=p, aleph=1.0, alpha=4.0)


def test_theta_against_conditional_mean_oracle():
    # oracle: direct conditional averaging at the extrapolation level on a
    # large single draw from the same model
    model = LinearParetoModel(0.8, 0.1, 4.0)
    p = 0.005
    x_p = (1.0 / p) ** 0.25
    big = sample_linear_pareto(ModelConfig(model, n=2_000_000, seed=22))
    oracle = float(np.mean(big.y[big.x > x_p]))

    reps, total = 100, 0.0
    for rep in range(reps):
        sample = sample_linear_pareto(ModelConfig(model, n=5000, seed=crng.mix_seed(23, rep)))
        k = 500
        aleph = cte_aleph4(sample, k, 4.0).value
        total += theta_hat(sample, k, p, aleph, 4.0).theta_hat
    mc_mean = total / reps
    assert abs(mc_mean - oracle) / oracle < 0.15


# ---------------------------------------------------------------------------
# extremal dependence measure
# ---------------------------------------------------------------------------

def test_edm_identity_pair_is_half():
    s = pareto_sample(24, 70)
    est = edm_estimate(s, 20, "l2")
    assert est.value == 0.5
    assert est.metadata["norm"] == "l2"


def test_edm_zero_y():
    x = np.linspace(1.0, 3.0, 15)
    s = BivariateSample(x, np.zeros_like(x))
    assert edm_estimate(s, 5, "l2").value == 0.0


def test_edm_bruteforce_all_norms():
    xs = [1.0, 4.0, 2.0, 8.0, 3.0, 0.5, 6.0, 5.0, 7.0, 2.5, 9.0, 1.5]
    ys = [2.0, 1.0, 0.0, 3.0, 5.0, 4.0, 0.5, 2.5, 7.0, 6.0, 1.0, 8.0]
    s = BivariateSample(xs, ys)
    for norm in ("l2", "l1", "linf"):
        est = edm_estimate(s, 4, norm)
        want_value, want_var = reference.edm(xs, ys, 4, norm)
        assert est.value == want_value
        assert est.plugin_variance == want_var


# ---------------------------------------------------------------------------
# confidence intervals
# ---------------------------------------------------------------------------

def test_ci_degenerate_variance():
    est = TailEstimate(value=0.3, k=10, estimator_id="tdc_empirical", plugin_variance=0.0)
    assert confidence_interval(est, 0.95) == (0.3, 0.3)


def test_ci_hand_values():
    est = TailEstimate(value=0.4, k=100, estimator_id="cte_aleph3", plugin_variance=0.16)
    lo, hi = confidence_interval(est, 0.95)
    assert lo == pytest.approx(0.4 - 1.959964 * 0.04, abs=1e-6)
    assert hi == pytest.approx(0.4 + 1.959964 * 0.04, abs=1e-6)


def test_ci_clipped_to_unit_interval():
    est = TailEstimate(
        value=0.98, k=4, estimator_id="tdc_quasispectral", plugin_variance=0.9
    )
    lo, hi = confidence_interval(est, 0.99)
    assert hi == 1.0
    assert lo == 0.0


def test_ci_requires_variance():
    est = TailEstimate(value=0.5, k=10, estimator_id="tdc_empirical")
    with pytest.raises(MissingVariance):
        confidence_interval(est, 0.9)
    est = TailEstimate(value=0.5, k=10, estimator_id="tdc_empirical", plugin_variance=1.0)
    with pytest.raises(ValueError):
        confidence_interval(est, 1.0)


# ---------------------------------------------------------------------------
# shared sanity
# ---------------------------------------------------------------------------

def test_estimates_carry_k_and_id():
    s = pareto_sample(25, 40)
    checks = [
        tdc_empirical(s, 8),
        tdc_quasispectral(s, 8, alpha=2.0),
        cte_aleph3(s, 8),
        cte_aleph4(s, 8, 3.0),
        edm_estimate(s, 8),
    ]
    for est in checks:
        assert est.k == 8
        assert est.estimator_id
        assert est.plugin_variance >= 0.0


def test_negative_variance_rejected():
    with pytest.raises(ValueError):
        TailEstimate(value=0.1, k=2, estimator_id="x", plugin_variance=-1e-9)
