from __future__ import annotations

import math

from ptrbf.domain.models.network import NetworkDims, PtRbfLayer, PtRbfNetwork
from ptrbf.schemas.config import InitSpec
from ptrbf.services.cplx import Rng, sample_complex
from ptrbf.services.init.common import check_layer, constant_variances, layer_shapes, zero_bias


def proposed_center_variance(fan_in: int, c_sigma: float, mu_v: float) -> float:
    return c_sigma * mu_v / fan_in


def proposed_weight_variance(fan_in: int, neurons: int, outputs: int, c_sigma: float, mu_v: float) -> float:
    # mu_v of the layer itself in the exponent; equal for all layers when mu_v is shared
    return 5.0 * c_sigma * math.exp(2.0 * mu_v) * fan_in / (12.0 * neurons * outputs * mu_v)


def proposed_variances(dims: NetworkDims, spec: InitSpec, index: int) -> tuple[float, float]:
    fan_in, neurons, outputs = layer_shapes(dims, index)
    return (
        proposed_center_variance(fan_in, spec.c_sigma, spec.mu_v),
        proposed_weight_variance(fan_in, neurons, outputs, spec.c_sigma, spec.mu_v),
    )


def init_proposed(dims: NetworkDims, spec: InitSpec, rng: Rng) -> PtRbfNetwork:
    spec.check()
    layers = []
    for index in range(dims.depth):
        fan_in, neurons, outputs = layer_shapes(dims, index)
        gamma_variance, weight_variance = proposed_variances(dims, spec, index)
        centers = sample_complex(rng, gamma_variance, (neurons, fan_in), spec.distribution)
        weights = sample_complex(rng, weight_variance, (outputs, neurons), spec.distribution)
        layers.append(
            check_layer(
                PtRbfLayer(
                    weights=weights,
                    bias=zero_bias(outputs),
                    centers=centers,
                    variances=constant_variances(neurons, spec.c_sigma),
                )
            )
        )
    return PtRbfNetwork(layers=layers)
