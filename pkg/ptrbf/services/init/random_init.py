from __future__ import annotations

from ptrbf.core.errors import ParameterError
from ptrbf.domain.models.network import NetworkDims, PtRbfLayer, PtRbfNetwork
from ptrbf.schemas.config import InitSpec
from ptrbf.services.cplx import Rng, sample_complex
from ptrbf.services.init.common import check_layer, constant_variances, layer_shapes, zero_bias


def init_random(dims: NetworkDims, spec: InitSpec, rng: Rng) -> PtRbfNetwork:
    if not spec.gamma_variance > 0:
        raise ParameterError(f"gamma_variance must be > 0, got {spec.gamma_variance}")
    layers = []
    for index in range(dims.depth):
        fan_in, neurons, outputs = layer_shapes(dims, index)
        centers = sample_complex(rng, spec.gamma_variance, (neurons, fan_in), spec.distribution)
        weights = sample_complex(rng, 1.0, (outputs, neurons), spec.distribution)
        layers.append(
            check_layer(
                PtRbfLayer(
                    weights=weights,
                    bias=zero_bias(outputs),
                    centers=centers,
                    variances=constant_variances(neurons, spec.gamma_variance / 2),
                )
            )
        )
    return PtRbfNetwork(layers=layers)
