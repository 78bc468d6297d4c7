# gradients are dE/dRe + j dE/dIm of E = 1/2 sum |y - d|^2
from __future__ import annotations

import logging
import math
import time

import numpy as np

from ptrbf.core.config import get_settings
from ptrbf.core.errors import ContractError, DimensionError, ParameterError
from ptrbf.domain.models.dataset import Dataset
from ptrbf.domain.models.gradients import Gradients, LayerGradients
from ptrbf.domain.models.network import ForwardTrace, PtRbfNetwork
from ptrbf.domain.models.run_record import RunRecord
from ptrbf.schemas.config import LayerRates, Scheme, TrainConfig
from ptrbf.services.cplx import Rng
from ptrbf.services.init.normalization import denormalize_outputs
from ptrbf.services.network import KERNEL_INPUT_CLAMP, network_forward, predict

logger = logging.getLogger(__name__)

MSE_DB_FLOOR = -300.0

# single hidden layer, per scheme
SINGLE_LAYER_RATES: dict[Scheme, LayerRates] = {
    Scheme.random: LayerRates(w=0.5, b=0.5, gamma=0.5, sigma=0.5),
    Scheme.constellation: LayerRates(w=0.5, b=0.5, gamma=0.5, sigma=0.5),
    Scheme.kmeans: LayerRates(w=0.1, b=0.1, gamma=0.4, sigma=0.2),
    Scheme.proposed: LayerRates(w=0.1, b=0.1, gamma=0.4, sigma=0.2),
}

# deep networks, per layer and shared by all parameter classes
DEEP_LAYER_RATES: tuple[float, ...] = (0.100, 0.050, 0.033, 0.025)


def default_rates(scheme: Scheme, depth: int) -> list[LayerRates]:
    if depth < 1:
        raise ParameterError(f"depth must be >= 1, got {depth}")
    if depth == 1:
        return [SINGLE_LAYER_RATES[Scheme(scheme)]]
    rates = []
    for layer in range(1, depth + 1):
        rate = DEEP_LAYER_RATES[layer - 1] if layer <= len(DEEP_LAYER_RATES) else 0.1 / layer
        rates.append(LayerRates(w=rate, b=rate, gamma=rate, sigma=rate))
    return rates


def mse(targets: np.ndarray, predictions: np.ndarray) -> float:
    targets = np.asarray(targets, dtype=np.complex128)
    predictions = np.asarray(predictions, dtype=np.complex128)
    if targets.size == 0:
        raise ParameterError("mse needs at least one instance")
    if targets.shape != predictions.shape:
        raise DimensionError(f"shape mismatch: {targets.shape} != {predictions.shape}")
    err = targets - predictions
    return float(np.mean(err.real**2 + err.imag**2))


def to_db(value: float) -> float:
    if value <= 0:
        return MSE_DB_FLOOR
    return max(10.0 * math.log10(value), MSE_DB_FLOOR)


def mse_db(targets: np.ndarray, predictions: np.ndarray) -> float:
    return to_db(mse(targets, predictions))


def _check_trace(net: PtRbfNetwork, trace: ForwardTrace, x: np.ndarray) -> None:
    if len(trace.layers) != net.depth:
        raise ContractError(f"trace has {len(trace.layers)} layers, network has {net.depth}")
    if trace.inputs.shape != x.shape or not np.array_equal(trace.inputs, x):
        raise ContractError("trace was recorded for a different input")
    for index, (layer, record) in enumerate(zip(net.layers, trace.layers)):
        if record.v.shape != (layer.n_neurons,) or record.y.shape != (layer.n_outputs,):
            raise ContractError(f"trace of layer {index + 1} does not match the network dimensions")


def backprop(net: PtRbfNetwork, trace: ForwardTrace, x: np.ndarray, d: np.ndarray) -> Gradients:
    x = np.asarray(x, dtype=np.complex128)
    d = np.asarray(d, dtype=np.complex128)
    _check_trace(net, trace, x)
    if d.shape != trace.output.shape:
        raise ContractError(f"target shape {d.shape} != output shape {trace.output.shape}")

    delta = trace.output - d
    grads: list[LayerGradients] = []
    for index in range(net.depth - 1, -1, -1):
        layer = net.layers[index]
        record = trace.layers[index]
        u = trace.layer_input(index)
        phi, v = record.phi, record.v

        g_weights = np.outer(delta, np.conj(phi))
        g_bias = delta.copy()
        g_phi = np.conj(layer.weights).T @ delta

        # dE/dv, zero where the kernel input was clamped
        g_vr = -phi.real * g_phi.real * (v.real < KERNEL_INPUT_CLAMP)
        g_vi = -phi.imag * g_phi.imag * (v.imag < KERNEL_INPUT_CLAMP)

        sr, si = layer.variances.real, layer.variances.imag
        dr = u.real[None, :] - layer.centers.real
        di = u.imag[None, :] - layer.centers.imag
        g_centers = -(g_vr / sr)[:, None] * 2.0 * dr - 1j * (g_vi / si)[:, None] * 2.0 * di
        g_variances = -g_vr * v.real / sr - 1j * g_vi * v.imag / si

        grads.append(LayerGradients(weights=g_weights, bias=g_bias, centers=g_centers, variances=g_variances))
        delta = -g_centers.sum(axis=0)
    grads.reverse()
    return Gradients(layers=grads)


def sgd_step(
    net: PtRbfNetwork,
    grads: Gradients,
    config: TrainConfig,
    layer_index: int | None = None,
    sigma_floor: float | None = None,
) -> PtRbfNetwork:
    """Update ``net`` in place (all layers, or only ``layer_index``) and return it."""
    if len(grads.layers) != net.depth:
        raise ContractError(f"gradients for {len(grads.layers)} layers, network has {net.depth}")
    if sigma_floor is None:
        sigma_floor = get_settings().variance_floor
    indices = range(net.depth) if layer_index is None else [layer_index]
    for index in indices:
        g = grads.layers[index]
        if not g.is_finite():
            raise ContractError(f"non-finite gradients in layer {index + 1}")
        rates = config.rates_for(index)
        layer = net.layers[index]
        layer.weights -= rates.w * g.weights
        layer.bias -= rates.b * g.bias
        layer.centers -= rates.gamma * g.centers
        updated = layer.variances - rates.sigma * g.variances
        layer.variances = np.maximum(updated.real, sigma_floor) + 1j * np.maximum(updated.imag, sigma_floor)
    return net


def evaluate_db(net: PtRbfNetwork, dataset: Dataset) -> float:
    """MSE in dB with predictions and targets mapped back to the original target scale."""
    outputs = dataset.stats.outputs
    predictions = denormalize_outputs(predict(net, dataset.inputs), outputs)
    targets = denormalize_outputs(dataset.targets, outputs)
    return mse_db(targets, predictions)


def train(
    net: PtRbfNetwork,
    dataset: Dataset,
    config: TrainConfig,
    validation: Dataset | None = None,
    rng: Rng | None = None,
) -> tuple[PtRbfNetwork, RunRecord]:
    if len(dataset) == 0:
        raise ParameterError("training set is empty")
    if dataset.n_inputs != net.inputs or dataset.n_outputs != net.outputs:
        raise DimensionError(
            f"dataset is {dataset.n_inputs}->{dataset.n_outputs}, network is {net.inputs}->{net.outputs}"
        )
    if rng is None:
        rng = Rng(config.shuffle_seed)
    sigma_floor = get_settings().variance_floor
    net = net.copy()
    record = RunRecord(config_hash=config.config_hash(), seed=rng.seed)
    started = time.perf_counter()
    for epoch in range(1, config.epochs + 1):
        for i in rng.permutation(len(dataset)):
            x = dataset.inputs[i]
            trace = network_forward(net, x)
            grads = backprop(net, trace, x, dataset.targets[i])
            sgd_step(net, grads, config, sigma_floor=sigma_floor)
        record.train_mse_db.append(evaluate_db(net, dataset))
        if validation is not None:
            record.val_mse_db.append(evaluate_db(net, validation))
        logger.debug(
            "epoch done epoch=%d train_mse_db=%.3f val_mse_db=%s",
            epoch,
            record.train_mse_db[-1],
            f"{record.val_mse_db[-1]:.3f}" if record.val_mse_db else "-",
        )
    record.wall_time_s = time.perf_counter() - started
    return net, record


def steady_state_db(curve_db: list[float], tail: int = 10) -> float:
    """Plateau level: linear mean of the last ``tail`` epochs, in dB."""
    if not curve_db:
        raise ParameterError("curve is empty")
    last = np.asarray(curve_db[-tail:], dtype=np.float64)
    return to_db(float(np.mean(10.0 ** (last / 10.0))))


def epochs_to_threshold(curve_db: list[float], threshold_db: float) -> int | None:
    for epoch, value in enumerate(curve_db, start=1):
        if value <= threshold_db:
            return epoch
    return None


def mean_curve_db(curves: list[list[float]]) -> list[float]:
    """Average curves in linear MSE, then convert back to dB."""
    if not curves:
        return []
    stacked = 10.0 ** (np.asarray(curves, dtype=np.float64) / 10.0)
    return [to_db(float(value)) for value in stacked.mean(axis=0)]
