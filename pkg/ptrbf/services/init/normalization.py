from __future__ import annotations

import logging

import numpy as np

from ptrbf.core.errors import DegenerateDataError, DimensionError
from ptrbf.domain.models.dataset import AxisStats, Dataset, NormStats
from ptrbf.schemas.config import InitSpec

logger = logging.getLogger(__name__)

ASYMMETRY_TOLERANCE = 1e-9


def fit_axis_stats(data: np.ndarray, spec: InitSpec, what: str = "data") -> AxisStats:
    data = np.atleast_2d(np.asarray(data, dtype=np.complex128))
    if data.size == 0:
        raise DegenerateDataError(f"{what}: empty dataset")
    width = data.shape[1]
    mean = complex(np.mean(data))
    variance_re = float(np.mean((data.real - mean.real) ** 2))
    variance_im = float(np.mean((data.imag - mean.imag) ** 2))
    largest = max(variance_re, variance_im)
    asymmetric = abs(variance_re - variance_im) > ASYMMETRY_TOLERANCE * largest
    if asymmetric:
        if variance_re <= 0 or variance_im <= 0:
            raise DegenerateDataError(
                f"{what}: component variance is zero (re={variance_re}, im={variance_im})"
            )
    elif variance_re + variance_im <= 0:
        raise DegenerateDataError(f"{what}: variance is zero")
    return AxisStats(
        mean=mean,
        variance_re=variance_re,
        variance_im=variance_im,
        width=width,
        target_variance=spec.c_sigma * spec.mu_v / width,
        asymmetric=asymmetric,
    )


def _forward(data: np.ndarray, stats: AxisStats) -> np.ndarray:
    if stats.asymmetric:
        re = (data.real - stats.mean.real) / np.sqrt(2.0 * stats.variance_re)
        im = (data.imag - stats.mean.imag) / np.sqrt(2.0 * stats.variance_im)
        return (re + 1j * im) * stats.scale
    return (data - stats.mean) / np.sqrt(stats.variance) * stats.scale


def apply_axis_stats(data: np.ndarray, stats: AxisStats) -> np.ndarray:
    data = np.asarray(data, dtype=np.complex128)
    if data.shape[-1] != stats.width:
        raise DimensionError(f"expected width {stats.width}, got {data.shape[-1]}")
    return _forward(data, stats)


def invert_axis_stats(data: np.ndarray, stats: AxisStats) -> np.ndarray:
    data = np.asarray(data, dtype=np.complex128)
    if stats.asymmetric:
        re = data.real / stats.scale * np.sqrt(2.0 * stats.variance_re) + stats.mean.real
        im = data.imag / stats.scale * np.sqrt(2.0 * stats.variance_im) + stats.mean.imag
        return re + 1j * im
    return data / stats.scale * np.sqrt(stats.variance) + stats.mean


def normalize_inputs(dataset: Dataset, spec: InitSpec) -> tuple[Dataset, NormStats]:
    axis = fit_axis_stats(dataset.inputs, spec, "inputs")
    logger.debug(
        "normalize inputs width=%d variance=%.6g asymmetric=%s", axis.width, axis.variance, axis.asymmetric
    )
    stats = dataset.stats.merge(NormStats(inputs=axis))
    return dataset.with_arrays(inputs=apply_axis_stats(dataset.inputs, axis), stats=stats), stats


def normalize_outputs(dataset: Dataset, spec: InitSpec) -> tuple[Dataset, NormStats]:
    axis = fit_axis_stats(dataset.targets, spec, "targets")
    logger.debug(
        "normalize targets width=%d variance=%.6g asymmetric=%s", axis.width, axis.variance, axis.asymmetric
    )
    stats = dataset.stats.merge(NormStats(outputs=axis))
    return dataset.with_arrays(targets=apply_axis_stats(dataset.targets, axis), stats=stats), stats


def normalize_dataset(dataset: Dataset, spec: InitSpec) -> tuple[Dataset, NormStats]:
    dataset, _ = normalize_inputs(dataset, spec)
    return normalize_outputs(dataset, spec)


def apply_normalization(dataset: Dataset, stats: NormStats) -> Dataset:
    """Map ``dataset`` with statistics fitted elsewhere (e.g. validation data with training stats)."""
    inputs = dataset.inputs if stats.inputs is None else apply_axis_stats(dataset.inputs, stats.inputs)
    targets = dataset.targets if stats.outputs is None else apply_axis_stats(dataset.targets, stats.outputs)
    return dataset.with_arrays(inputs=inputs, targets=targets, stats=stats)


def denormalize_outputs(y: np.ndarray, stats: NormStats | AxisStats | None) -> np.ndarray:
    if isinstance(stats, NormStats):
        stats = stats.outputs
    if stats is None:
        return np.asarray(y, dtype=np.complex128)
    return invert_axis_stats(y, stats)


def normalize_symbols(symbols: np.ndarray, stats: NormStats | AxisStats | None) -> np.ndarray:
    """Map alphabet symbols into the normalized target coordinates."""
    if isinstance(stats, NormStats):
        stats = stats.outputs
    symbols = np.asarray(symbols, dtype=np.complex128).ravel()
    if stats is None:
        return symbols
    return _forward(symbols, stats)
