from __future__ import annotations

import numpy as np

from ptrbf.core.errors import ParameterError
from ptrbf.domain.models.network import NetworkDims, PtRbfLayer, PtRbfNetwork
from ptrbf.schemas.config import InitSpec
from ptrbf.services.cplx import Rng
from ptrbf.services.init.common import apply_variance_floor, check_layer, layer_shapes, zero_bias


def _max_pairwise_distance(points: np.ndarray) -> float:
    diff = points[:, None, :] - points[None, :, :]
    return float(np.sqrt(np.max(np.sum(diff * diff, axis=-1))))


def constellation_variance(centers: np.ndarray) -> complex:
    """Half the largest pairwise center-vector distance, real and imaginary parts separately."""
    centers = np.atleast_2d(np.asarray(centers, dtype=np.complex128))
    return complex(0.5 * _max_pairwise_distance(centers.real), 0.5 * _max_pairwise_distance(centers.imag))


def init_constellation(
    dims: NetworkDims,
    constellation: np.ndarray | list[complex],
    rng: Rng,
    spec: InitSpec | None = None,
) -> PtRbfNetwork:
    alphabet = np.asarray(constellation, dtype=np.complex128).ravel()
    if alphabet.size == 0:
        raise ParameterError("constellation must not be empty")
    floor = spec.variance_floor if spec is not None else None
    layers = []
    for index in range(dims.depth):
        fan_in, neurons, outputs = layer_shapes(dims, index)
        centers = alphabet[rng.integers(alphabet.size, (neurons, fan_in))]
        sigma = constellation_variance(centers)
        variances = apply_variance_floor(
            np.full(neurons, sigma, dtype=np.complex128), floor, f"constellation layer {index + 1}"
        )
        layers.append(
            check_layer(
                PtRbfLayer(
                    weights=np.zeros((outputs, neurons), dtype=np.complex128),
                    bias=zero_bias(outputs),
                    centers=centers,
                    variances=variances,
                )
            )
        )
    return PtRbfNetwork(layers=layers)
