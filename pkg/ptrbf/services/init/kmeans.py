"""Split-complex K-means: Lloyd iterations run separately on Re(X) and Im(X)."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ptrbf.core.config import get_settings
from ptrbf.core.errors import DimensionError, ParameterError, UnsupportedSchemeError
from ptrbf.domain.models.network import NetworkDims, PtRbfLayer, PtRbfNetwork
from ptrbf.schemas.config import InitSpec
from ptrbf.services.cplx import Rng, sample_complex
from ptrbf.services.init.common import apply_variance_floor, check_layer, zero_bias

logger = logging.getLogger(__name__)


@dataclass
class LloydResult:
    centers: np.ndarray  # K x D
    labels: np.ndarray  # N
    iterations: int
    converged: bool

    def inertia(self, points: np.ndarray) -> float:
        diff = points - self.centers[self.labels]
        return float(np.sum(diff * diff))


@dataclass
class SplitKMeansResult:
    real: LloydResult
    imag: LloydResult

    @property
    def centers(self) -> np.ndarray:
        # C_X = C_Re + j C_Im, paired by cluster index
        return self.real.centers + 1j * self.imag.centers


def _assign(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centers[None, :, :]
    return np.argmin(np.sum(diff * diff, axis=-1), axis=1)


def _update(points: np.ndarray, labels: np.ndarray, centers: np.ndarray, rng: Rng) -> np.ndarray:
    k = centers.shape[0]
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros_like(centers)
    np.add.at(sums, labels, points)
    updated = centers.copy()
    filled = counts > 0
    updated[filled] = sums[filled] / counts[filled, None]
    for j in np.flatnonzero(~filled):
        # empty cluster: re-seed from a random data point
        updated[j] = points[rng.integers(points.shape[0])]
        logger.debug("kmeans reseed cluster=%d", j)
    return updated


def lloyd(points: np.ndarray, k: int, rng: Rng, max_iterations: int = 100) -> LloydResult:
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points[:, None]
    n = points.shape[0]
    if n == 0:
        raise ParameterError("kmeans needs a nonempty dataset")
    if not 1 <= k <= n:
        raise ParameterError(f"K must be in [1, {n}], got {k}")
    centers = points[rng.choice(n, k, replace=False)].copy()
    labels: np.ndarray | None = None
    iterations = 0
    converged = False
    while iterations < max_iterations:
        iterations += 1
        new_labels = _assign(points, centers)
        if labels is not None and np.array_equal(new_labels, labels):
            converged = True
            break
        labels = new_labels
        centers = _update(points, labels, centers, rng)
    assert labels is not None
    return LloydResult(centers=centers, labels=labels, iterations=iterations, converged=converged)


def split_kmeans(data: np.ndarray, k: int, rng: Rng, max_iterations: int | None = None) -> SplitKMeansResult:
    data = np.asarray(data, dtype=np.complex128)
    if data.ndim == 1:
        data = data[:, None]
    if data.shape[0] == 0:
        raise ParameterError("kmeans needs a nonempty dataset")
    if k > data.shape[0]:
        raise ParameterError(f"K={k} exceeds the dataset size {data.shape[0]}")
    if max_iterations is None:
        max_iterations = get_settings().kmeans_max_iterations
    real = lloyd(data.real, k, rng, max_iterations)
    imag = lloyd(data.imag, k, rng, max_iterations)
    logger.info(
        "kmeans done k=%d n=%d iterations_re=%d iterations_im=%d converged=%s",
        k,
        data.shape[0],
        real.iterations,
        imag.iterations,
        real.converged and imag.converged,
    )
    return SplitKMeansResult(real=real, imag=imag)


def in_cluster_variances(data: np.ndarray, result: SplitKMeansResult) -> np.ndarray:
    """Mean squared in-cluster distance per cluster, real and imaginary parts separately."""
    data = np.asarray(data, dtype=np.complex128)
    k = result.real.centers.shape[0]

    def per_axis(points: np.ndarray, fit: LloydResult) -> np.ndarray:
        diff = points - fit.centers[fit.labels]
        dist = np.sum(diff * diff, axis=1)
        counts = np.bincount(fit.labels, minlength=k)
        totals = np.bincount(fit.labels, weights=dist, minlength=k)
        return np.divide(totals, counts, out=np.zeros(k), where=counts > 0)

    return per_axis(data.real, result.real) + 1j * per_axis(data.imag, result.imag)


def init_kmeans(dims: NetworkDims, inputs: np.ndarray, spec: InitSpec, rng: Rng) -> PtRbfNetwork:
    if dims.depth != 1:
        raise UnsupportedSchemeError(f"shallow only: K-means initialization needs 1 hidden layer, got {dims.depth}")
    inputs = np.asarray(inputs, dtype=np.complex128)
    if inputs.ndim != 2 or inputs.shape[1] != dims.inputs:
        raise DimensionError(f"inputs must be N x {dims.inputs}, got shape {inputs.shape}")
    k = dims.neurons[0]
    result = split_kmeans(inputs, k, rng)
    variances = in_cluster_variances(inputs, result)
    # all K cluster centers are used; the random order is the selection without replacement
    order = rng.permutation(k)
    centers = result.centers[order]
    variances = apply_variance_floor(variances[order], spec.variance_floor, "kmeans")
    weights = sample_complex(rng, 1.0, (dims.outputs[0], k), spec.distribution)
    layer = PtRbfLayer(weights=weights, bias=zero_bias(dims.outputs[0]), centers=centers, variances=variances)
    return PtRbfNetwork(layers=[check_layer(layer)])
