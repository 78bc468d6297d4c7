import numpy as np
import pytest

from ptrbf.core.errors import DimensionError, ParameterError
from ptrbf.services.cplx import (
    ComplexSpec,
    ComplexUniformSpec,
    Rng,
    complex_variance,
    sample_complex,
    sample_complex_gaussian,
    sample_complex_uniform,
    squared_l2_distance,
)


def test_same_seed_gives_same_stream():
    a = Rng(42).uniform(-1.0, 1.0, 1000)
    b = Rng(42).uniform(-1.0, 1.0, 1000)
    assert np.array_equal(a, b)


def test_child_streams_are_independent_and_do_not_advance_parent():
    root = Rng(7)
    before = Rng(7).uniform(0.0, 1.0, 5)
    first = root.child(0, 1).uniform(0.0, 1.0, 5)
    second = root.child(0, 2).uniform(0.0, 1.0, 5)
    assert not np.array_equal(first, second)
    assert np.array_equal(root.uniform(0.0, 1.0, 5), before)
    assert np.array_equal(Rng(7).child(0, 1).uniform(0.0, 1.0, 5), first)


@pytest.mark.parametrize("seed", [-1, 2**64])
def test_seed_must_fit_in_u64(seed):
    with pytest.raises(ParameterError):
        Rng(seed)


def test_uniform_sampler_zero_variance_returns_mean():
    out = sample_complex_uniform(Rng(1), ComplexUniformSpec(variance=0.0, mean=0.5 - 2j), (3, 4))
    assert np.all(out == 0.5 - 2j)


def test_uniform_sampler_matches_total_variance():
    z = sample_complex_uniform(Rng(3), ComplexUniformSpec(variance=1.0), 1_000_000)
    assert complex_variance(z) == pytest.approx(1.0, rel=0.01)
    assert np.var(z.real) == pytest.approx(0.5, rel=0.01)
    assert np.var(z.imag) == pytest.approx(0.5, rel=0.01)
    half_width = np.sqrt(1.5)
    assert np.max(np.abs(z.real)) <= half_width
    assert np.max(np.abs(z.imag)) <= half_width


def test_gaussian_sampler_matches_total_variance():
    z = sample_complex_gaussian(Rng(3), ComplexSpec(variance=2.0, mean=1j), 1_000_000)
    assert complex_variance(z) == pytest.approx(2.0, rel=0.01)
    assert abs(np.mean(z) - 1j) < 0.01
    assert np.max(np.abs(z.real)) > np.sqrt(1.5)


def test_uniform_spec_is_the_shared_spec():
    assert ComplexUniformSpec is ComplexSpec


def test_sampler_is_deterministic():
    a = sample_complex(Rng(9), 0.3, (5, 5))
    b = sample_complex(Rng(9), 0.3, (5, 5))
    assert np.array_equal(a, b)


def test_negative_variance_is_rejected():
    with pytest.raises(ParameterError):
        sample_complex(Rng(0), -1.0, 3)


def test_unknown_distribution_is_rejected():
    with pytest.raises(ParameterError):
        sample_complex(Rng(0), 1.0, 3, "laplace")


def test_squared_l2_distance():
    assert squared_l2_distance(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 2.0
    a = np.array([0.3, -1.2, 4.0])
    assert squared_l2_distance(a, a) == 0.0


def test_squared_l2_distance_matches_loop():
    gen = np.random.default_rng(5)
    a, b = gen.standard_normal(17), gen.standard_normal(17)
    expected = 0.0
    for x, y in zip(a, b):
        expected += (x - y) ** 2
    assert squared_l2_distance(a, b) == pytest.approx(expected, rel=1e-12)


def test_squared_l2_distance_length_mismatch():
    with pytest.raises(DimensionError):
        squared_l2_distance(np.zeros(3), np.zeros(4))


def test_spawn_matches_numbered_children():
    streams = Rng(3).spawn(3)
    assert [s.keys for s in streams] == [(0,), (1,), (2,)]
    assert np.array_equal(streams[2].normal(1.0, 4), Rng(3).child(2).normal(1.0, 4))
