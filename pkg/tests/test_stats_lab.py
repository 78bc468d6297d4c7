import math

import numpy as np
import pytest

from ptrbf.core.errors import ParameterError
from ptrbf.schemas.config import StatsConfig
from ptrbf.services.cplx import Rng
from ptrbf.services.init import proposed_center_variance, proposed_weight_variance
from ptrbf.services.stats_lab import (
    expected_v_closed,
    kernel_mean_approx,
    kernel_mean_exact,
    kernel_variance_approx,
    mc_estimate,
    var_v_closed,
    var_y_closed,
)


def test_expected_v_at_defaults():
    assert expected_v_closed(16, 1.0, 1 / 16, 1 / 16) == pytest.approx(1 + 1j, rel=1e-12)


def test_expected_v_is_linear():
    assert expected_v_closed(16, 1.0, 0.0, 0.0) == 0
    base = expected_v_closed(8, 1.5, 0.2, (0.1, 0.3))
    assert expected_v_closed(8, 1.5, 0.4, (0.2, 0.6)) == pytest.approx(2 * base, rel=1e-12)


def test_var_v_closed_examples():
    assert var_v_closed(16, 1.0, 1 / 16) == pytest.approx(0.15, rel=1e-12)
    assert var_v_closed(16, 1.0, 0.0) == 0.0
    assert var_v_closed(16, 2.0, 1 / 16) == pytest.approx(0.15 / 4, rel=1e-12)
    assert var_v_closed(16, 1.0, 1 / 16, convention="component") == pytest.approx(0.0375, rel=1e-12)


def test_finite_size_variance_tends_to_the_limit():
    limit = var_v_closed(10_000, 1.0, 1e-4)
    assert var_v_closed(10_000, 1.0, 1e-4, finite_size=True) == pytest.approx(limit, rel=1e-3)
    assert var_v_closed(16, 1.0, 1 / 16, finite_size=True) == pytest.approx(0.15, rel=0.05)


def test_var_y_closed_at_defaults():
    weight = proposed_weight_variance(16, 64, 4, 1.0, 1.0)
    assert var_y_closed(64, 16, 1.0, 1.0, weight, 1 / 16) == pytest.approx(0.25, rel=1e-12)
    assert var_y_closed(64, 16, 1.0, 1.0, 0.0, 1 / 16) == 0.0


def test_var_y_cancels_to_target_under_proposed_variances():
    gen = np.random.default_rng(0)
    for _ in range(20):
        fan_in = int(gen.integers(1, 65))
        neurons = int(gen.integers(1, 129))
        outputs = int(gen.integers(1, 33))
        c_sigma = float(gen.uniform(0.1, 5.0))
        mu_v = float(gen.uniform(0.1, 3.0))
        gamma = proposed_center_variance(fan_in, c_sigma, mu_v)
        weight = proposed_weight_variance(fan_in, neurons, outputs, c_sigma, mu_v)
        value = var_y_closed(neurons, fan_in, c_sigma, mu_v, weight, gamma)
        assert value == pytest.approx(c_sigma * mu_v / outputs, rel=1e-12)


@pytest.mark.parametrize("c_sigma", [0.0, -1.0])
def test_closed_forms_reject_nonpositive_c_sigma(c_sigma):
    with pytest.raises(ParameterError):
        expected_v_closed(16, c_sigma, 0.1, 0.1)
    with pytest.raises(ParameterError):
        var_v_closed(16, c_sigma, 0.1)
    with pytest.raises(ParameterError):
        var_y_closed(64, 16, c_sigma, 1.0, 0.1, 0.1)


def test_kernel_mean_approximation_for_large_mean():
    assert kernel_mean_exact(10.0, 0.1) == pytest.approx(kernel_mean_approx(10.0, 0.1), rel=1e-12)
    assert kernel_mean_approx(1.0, 0.0) == pytest.approx(math.exp(-1.0))
    assert kernel_variance_approx(1.0, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_kernel_mean_exact_matches_sampling():
    gen = np.random.default_rng(3)
    v = gen.normal(0.5, 0.5, 2_000_000)
    empirical = float(np.mean(np.where(v >= 0, np.exp(-v), 0.0)))
    assert kernel_mean_exact(0.5, 0.25) == pytest.approx(empirical, rel=0.01)


@pytest.fixture(scope="module")
def estimate():
    return mc_estimate(StatsConfig(trials=100_000), Rng(0), threads=1)


def test_mc_mean_of_v(estimate):
    mean = complex(estimate.mean_v.monte_carlo)
    assert 0.95 <= mean.real <= 1.05
    assert 0.95 <= mean.imag <= 1.05
    assert estimate.mean_v.passed


def test_mc_variance_of_v(estimate):
    assert estimate.var_v.closed_form == pytest.approx(0.15)
    assert estimate.var_v.monte_carlo == pytest.approx(0.15, rel=0.15)
    assert estimate.checks[0].matched == "total"


def test_mc_variance_of_y(estimate):
    assert estimate.var_y.closed_form == pytest.approx(0.25)
    assert estimate.var_y.monte_carlo == pytest.approx(0.25, rel=0.25)
    assert estimate.passed


def test_mc_is_deterministic_across_thread_counts():
    config = StatsConfig(trials=10_000, inputs=8, neurons=16, outputs=2)
    a = mc_estimate(config, Rng(5), threads=1)
    b = mc_estimate(config, Rng(5), threads=4)
    assert a == b


def test_mc_deviation_shrinks_with_more_trials():
    small = mc_estimate(StatsConfig(trials=10_000, group_size=10), Rng(1), threads=1)
    large = mc_estimate(StatsConfig(trials=100_000, group_size=10), Rng(1), threads=1)
    assert large.var_v.stderr < small.var_v.stderr


def test_mc_needs_enough_trials():
    with pytest.raises(ParameterError):
        mc_estimate(StatsConfig(trials=100), Rng(0))
