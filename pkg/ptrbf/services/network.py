"""Forward propagation of a deep PT-RBF."""
from __future__ import annotations

import numpy as np

from ptrbf.core.errors import DimensionError, ParameterError
from ptrbf.domain.models.network import ForwardTrace, LayerTrace, PtRbfLayer, PtRbfNetwork
from ptrbf.services.cplx import squared_l2_distance

# exp(-700) is already ~1e-304; larger arguments only produce denormals
KERNEL_INPUT_CLAMP = 700.0


def kernel_input(prev_output: np.ndarray, center: np.ndarray, variance: complex) -> complex:
    prev_output = np.asarray(prev_output, dtype=np.complex128)
    center = np.asarray(center, dtype=np.complex128)
    if prev_output.shape != center.shape:
        raise DimensionError(f"length mismatch: {prev_output.shape} != {center.shape}")
    variance = complex(variance)
    if variance.real <= 0 or variance.imag <= 0:
        raise ParameterError(f"variance components must be > 0, got {variance}")
    re = squared_l2_distance(prev_output.real, center.real) / variance.real
    im = squared_l2_distance(prev_output.imag, center.imag) / variance.imag
    return complex(re, im)


def kernel(v):
    v = np.asarray(v, dtype=np.complex128)
    phi = np.exp(-np.minimum(v.real, KERNEL_INPUT_CLAMP)) + 1j * np.exp(-np.minimum(v.imag, KERNEL_INPUT_CLAMP))
    return complex(phi) if phi.ndim == 0 else phi


def kernel_inputs(layer: PtRbfLayer, prev_output: np.ndarray) -> np.ndarray:
    """v for every neuron of ``layer``; ``prev_output`` may be one vector or a batch (N x n)."""
    prev_output = np.asarray(prev_output, dtype=np.complex128)
    if prev_output.shape[-1] != layer.n_inputs:
        raise DimensionError(f"layer expects {layer.n_inputs} inputs, got {prev_output.shape[-1]}")
    u = prev_output[..., None, :]
    d_re = u.real - layer.centers.real
    d_im = u.imag - layer.centers.imag
    v_re = np.sum(d_re * d_re, axis=-1) / layer.variances.real
    v_im = np.sum(d_im * d_im, axis=-1) / layer.variances.imag
    return v_re + 1j * v_im


def layer_forward(layer: PtRbfLayer, prev_output: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    prev_output = np.asarray(prev_output, dtype=np.complex128)
    if prev_output.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {prev_output.shape}")
    v = kernel_inputs(layer, prev_output)
    phi = kernel(v)
    y = layer.weights @ phi + layer.bias
    return y, v, phi


def network_forward(net: PtRbfNetwork, x: np.ndarray) -> ForwardTrace:
    x = np.asarray(x, dtype=np.complex128)
    if x.shape != (net.inputs,):
        raise DimensionError(f"network expects {net.inputs} inputs, got shape {x.shape}")
    trace = ForwardTrace(inputs=x)
    y = x
    for layer in net.layers:
        y, v, phi = layer_forward(layer, y)
        trace.layers.append(LayerTrace(v=v, phi=phi, y=y))
    return trace


def layer_forward_batch(layer: PtRbfLayer, prev_outputs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    v = kernel_inputs(layer, prev_outputs)
    phi = kernel(v)
    y = phi @ layer.weights.T + layer.bias
    return y, v, phi


def predict(net: PtRbfNetwork, inputs: np.ndarray) -> np.ndarray:
    """Batch inference over an N x P input matrix; no trace is kept."""
    y = np.atleast_2d(np.asarray(inputs, dtype=np.complex128))
    if y.shape[1] != net.inputs:
        raise DimensionError(f"network expects {net.inputs} inputs, got {y.shape[1]}")
    for layer in net.layers:
        y, _, _ = layer_forward_batch(layer, y)
    return y
