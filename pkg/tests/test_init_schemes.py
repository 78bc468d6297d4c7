import numpy as np
import pytest

from ptrbf.core.errors import DegenerateVarianceError, ParameterError
from ptrbf.domain.models import NetworkDims
from ptrbf.schemas.config import InitSpec, Scheme
from ptrbf.services.cplx import Rng, complex_variance
from ptrbf.services.init import (
    constellation_variance,
    init_constellation,
    init_proposed,
    init_random,
    initialize,
    proposed_center_variance,
    proposed_weight_variance,
)
from ptrbf.services.task_gen import qam_alphabet


def test_random_init_parameters():
    dims = NetworkDims.from_architecture(16, [48, 16], 4)
    net = init_random(dims, InitSpec(scheme=Scheme.random, gamma_variance=1.0), Rng(0))
    net.validate()
    for layer in net.layers:
        assert np.all(layer.variances == 0.5 + 0.5j)
        assert np.all(layer.bias == 0)


def test_random_init_weight_variance():
    dims = NetworkDims(inputs=1, neurons=(1000,), outputs=(100,))
    net = init_random(dims, InitSpec(scheme=Scheme.random), Rng(1))
    assert complex_variance(net.layers[0].weights) == pytest.approx(1.0, rel=0.02)


def test_random_init_rejects_nonpositive_gamma_variance():
    spec = InitSpec.model_construct(scheme=Scheme.random, gamma_variance=0.0, distribution="uniform")
    with pytest.raises(ParameterError):
        init_random(NetworkDims(inputs=2, neurons=(3,), outputs=(1,)), spec, Rng(0))


def test_proposed_variance_formulas():
    assert proposed_center_variance(16, 1.0, 1.0) == pytest.approx(0.0625)
    assert proposed_weight_variance(16, 64, 4, 1.0, 1.0) == pytest.approx(0.19244, rel=1e-3)


def test_proposed_init_matches_variances():
    dims = NetworkDims(inputs=16, neurons=(6250,), outputs=(16,))
    net = init_proposed(dims, InitSpec(), Rng(2))
    layer = net.layers[0]
    assert complex_variance(layer.centers) == pytest.approx(1 / 16, rel=0.02)
    assert complex_variance(layer.weights) == pytest.approx(proposed_weight_variance(16, 6250, 16, 1.0, 1.0), rel=0.02)
    assert np.all(layer.variances == 1 + 1j)
    assert np.all(layer.bias == 0)


def test_proposed_init_deep_chain():
    dims = NetworkDims.from_architecture(16, [16, 16, 16, 16], 4)
    net = init_proposed(dims, InitSpec(c_sigma=2.0), Rng(3))
    net.validate()
    assert [layer.n_inputs for layer in net.layers] == [16, 16, 16, 16]
    assert net.outputs == 4
    assert all(np.all(layer.variances == 2 + 2j) for layer in net.layers)


def test_proposed_init_rejects_bad_constants():
    spec = InitSpec.model_construct(scheme=Scheme.proposed, c_sigma=0.0, mu_v=1.0, gamma_variance=1.0, variance_floor=None)
    with pytest.raises(ParameterError):
        init_proposed(NetworkDims(inputs=2, neurons=(3,), outputs=(1,)), spec, Rng(0))


def test_constellation_variance_example():
    centers = np.array([[1 + 1j], [-1 - 1j]])
    assert constellation_variance(centers) == 1 + 1j


def test_constellation_init_uses_alphabet():
    alphabet = qam_alphabet(16)
    dims = NetworkDims.from_architecture(16, [24, 24, 16], 4)
    net = initialize(dims, InitSpec(scheme=Scheme.constellation), Rng(4), constellation=alphabet.symbols)
    net.validate()
    for layer in net.layers:
        assert alphabet.contains(layer.centers)
        assert np.all(layer.weights == 0) and np.all(layer.bias == 0)
        assert np.all(layer.variances == layer.variances[0])


def test_constellation_init_degenerate():
    dims = NetworkDims(inputs=3, neurons=(4,), outputs=(1,))
    with pytest.raises(DegenerateVarianceError):
        init_constellation(dims, [0.5 + 0.5j], Rng(0))
    floored = init_constellation(dims, [0.5 + 0.5j], Rng(0), InitSpec(variance_floor=1e-6))
    assert np.all(floored.layers[0].variances == 1e-6 + 1e-6j)


def test_initialize_requires_scheme_inputs():
    dims = NetworkDims(inputs=2, neurons=(3,), outputs=(1,))
    with pytest.raises(ParameterError):
        initialize(dims, InitSpec(scheme=Scheme.kmeans), Rng(0))
    with pytest.raises(ParameterError):
        initialize(dims, InitSpec(scheme=Scheme.constellation), Rng(0))


def test_initialize_is_deterministic():
    dims = NetworkDims.from_architecture(16, [48, 16], 4)
    a = initialize(dims, InitSpec(), Rng(5))
    b = initialize(dims, InitSpec(), Rng(5))
    assert a.identical(b)
