from __future__ import annotations

import numpy as np
import pytest

from ptrbf.domain.models import PtRbfLayer, PtRbfNetwork
from ptrbf.schemas.config import InitSpec, Scheme
from ptrbf.services.cplx import Rng


def _complex(gen: np.random.Generator, shape, scale: float) -> np.ndarray:
    return scale * (gen.standard_normal(shape) + 1j * gen.standard_normal(shape))


def build_network(seed: int, inputs: int, widths: list[int], weight_scale: float = 0.5) -> PtRbfNetwork:
    """Arbitrary valid network; ``widths`` alternates neurons and outputs per layer."""
    gen = np.random.default_rng(seed)
    layers = []
    fan_in = inputs
    for neurons, outputs in zip(widths[0::2], widths[1::2]):
        layers.append(
            PtRbfLayer(
                weights=_complex(gen, (outputs, neurons), weight_scale),
                bias=_complex(gen, outputs, 0.1),
                centers=_complex(gen, (neurons, fan_in), 0.5),
                variances=gen.uniform(0.5, 2.0, neurons) + 1j * gen.uniform(0.5, 2.0, neurons),
            )
        )
        fan_in = outputs
    net = PtRbfNetwork(layers=layers)
    net.validate()
    return net


@pytest.fixture
def rng() -> Rng:
    return Rng(1234)


@pytest.fixture
def proposed_spec() -> InitSpec:
    return InitSpec(scheme=Scheme.proposed)


@pytest.fixture
def make_network():
    return build_network
