from __future__ import annotations

import numpy as np

from ptrbf.core.errors import DegenerateVarianceError
from ptrbf.domain.models.network import NetworkDims, PtRbfLayer


def constant_variances(n_neurons: int, value: float) -> np.ndarray:
    return np.full(n_neurons, complex(value, value), dtype=np.complex128)


def zero_bias(n_outputs: int) -> np.ndarray:
    return np.zeros(n_outputs, dtype=np.complex128)


def apply_variance_floor(variances: np.ndarray, floor: float | None, what: str) -> np.ndarray:
    """Reject zero variance components, or lift them to ``floor`` when one is given."""
    degenerate = (variances.real <= 0) | (variances.imag <= 0)
    if not np.any(degenerate):
        return variances
    if floor is None:
        count = int(np.count_nonzero(degenerate))
        raise DegenerateVarianceError(f"{what}: {count} center variance(s) are zero")
    return np.maximum(variances.real, floor) + 1j * np.maximum(variances.imag, floor)


def check_layer(layer: PtRbfLayer) -> PtRbfLayer:
    layer.validate()
    return layer


def layer_shapes(dims: NetworkDims, index: int) -> tuple[int, int, int]:
    """(fan_in, neurons, outputs) of the 0-based layer ``index``."""
    return dims.fan_in(index), dims.neurons[index], dims.outputs[index]
