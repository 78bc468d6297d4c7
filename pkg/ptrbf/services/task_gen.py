"""QAM over a flat Rayleigh MIMO channel; input index is ``t * n_rx + r``."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ptrbf.core.errors import ParameterError
from ptrbf.domain.models.dataset import Dataset, DatasetMeta
from ptrbf.schemas.config import DatasetConfig
from ptrbf.services.cplx import ComplexSpec, Rng, sample_complex_gaussian

logger = logging.getLogger(__name__)


def _gray(i: np.ndarray) -> np.ndarray:
    return i ^ (i >> 1)


@dataclass(frozen=True)
class QamAlphabet:
    """Square M-QAM with unit average power.

    Symbol ``k`` has in-phase level index ``k % m`` and quadrature index
    ``k // m`` (m = sqrt(M)); ``labels[k]`` is its Gray-coded bit label,
    quadrature bits high.
    """

    order: int
    symbols: np.ndarray
    scale: float
    labels: np.ndarray

    @property
    def bits_per_symbol(self) -> int:
        return int(math.log2(self.order))

    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.symbols) ** 2))

    def contains(self, values: np.ndarray, atol: float = 1e-12) -> bool:
        values = np.asarray(values, dtype=np.complex128).ravel()
        dist = np.abs(values[:, None] - self.symbols[None, :])
        return bool(np.all(dist.min(axis=1) <= atol))


def qam_alphabet(order: int = 16) -> QamAlphabet:
    if order < 4 or order & (order - 1) or int(math.log2(order)) % 2:
        raise ParameterError(f"QAM order must be a power of 4, got {order}")
    m = math.isqrt(order)
    k = np.arange(order)
    re_index, im_index = k % m, k // m
    levels = 2 * np.arange(m) - (m - 1)
    scale = math.sqrt(2.0 * (order - 1) / 3.0)
    symbols = (levels[re_index] + 1j * levels[im_index]) / scale
    half = int(math.log2(m))
    labels = (_gray(im_index) << half) | _gray(re_index)
    return QamAlphabet(order=order, symbols=symbols.astype(np.complex128), scale=scale, labels=labels)


def gen_qam(order: int, rng: Rng, count: int | tuple[int, ...]) -> np.ndarray:
    alphabet = qam_alphabet(order)
    return alphabet.symbols[rng.integers(order, count)]


def noise_variance(ebn0_db: float, bits_per_symbol: int, symbol_energy: float = 1.0) -> float:
    """N0 = (Es / bits) / 10^(Eb/N0 / 10); an infinite Eb/N0 gives a noiseless channel."""
    if bits_per_symbol <= 0:
        raise ParameterError(f"bits per symbol must be > 0, got {bits_per_symbol}")
    if math.isinf(ebn0_db) and ebn0_db > 0:
        return 0.0
    return (symbol_energy / bits_per_symbol) / 10.0 ** (ebn0_db / 10.0)


def rayleigh_channel(rng: Rng, n_rx: int, n_tx: int) -> np.ndarray:
    """i.i.d. circular complex Gaussian entries with unit variance."""
    return sample_complex_gaussian(rng, ComplexSpec(variance=1.0), (n_rx, n_tx))


@dataclass(frozen=True)
class ChannelInstance:
    H: np.ndarray
    noise_variance: float

    def __post_init__(self) -> None:
        if self.noise_variance < 0:
            raise ParameterError(f"noise variance must be >= 0, got {self.noise_variance}")


def gen_dataset(config: DatasetConfig, rng: Rng | None = None) -> Dataset:
    if config.count <= 0:
        raise ParameterError(f"count must be > 0, got {config.count}")
    if rng is None:
        rng = Rng(config.seed)
    alphabet = qam_alphabet(config.order)
    n0 = noise_variance(config.ebn0_db, alphabet.bits_per_symbol)
    coherence = config.coherence or config.count
    blocks = math.ceil(config.count / coherence)

    symbols = alphabet.symbols[rng.integers(config.order, (config.count, config.n_tx))]
    if config.channel == "identity":
        if config.n_rx != config.n_tx:
            raise ParameterError(f"identity channel needs n_rx == n_tx, got {config.n_rx} and {config.n_tx}")
        channels = np.broadcast_to(np.eye(config.n_rx, dtype=np.complex128), (blocks, config.n_rx, config.n_tx)).copy()
        received = symbols.copy()
    else:
        channels = np.stack([rayleigh_channel(rng, config.n_rx, config.n_tx) for _ in range(blocks)])
        block_of = np.arange(config.count) // coherence
        received = np.einsum("nrt,nt->nr", channels[block_of], symbols)

    shape = (config.count, config.slots, config.n_rx)
    if n0 > 0:
        noise = sample_complex_gaussian(rng, ComplexSpec(variance=n0), shape)
    else:
        noise = np.zeros(shape, dtype=np.complex128)
    inputs = (received[:, None, :] + noise).reshape(config.count, config.slots * config.n_rx)

    logger.info(
        "dataset generated count=%d order=%d ebn0_db=%s channel=%s blocks=%d noise_variance=%.4g",
        config.count,
        config.order,
        config.ebn0_db,
        config.channel,
        blocks,
        n0,
    )
    return Dataset(
        inputs=inputs,
        targets=symbols,
        meta=DatasetMeta(
            seed=config.seed,
            ebn0_db=config.ebn0_db,
            order=config.order,
            channel=config.channel,
            coherence=coherence,
        ),
        channels=channels,
        alphabet=alphabet.symbols.copy(),
    )


def channel_instances(dataset: Dataset) -> list[ChannelInstance]:
    if dataset.channels is None or dataset.meta.order is None or dataset.meta.ebn0_db is None:
        raise ParameterError("dataset carries no channel realizations")
    n0 = noise_variance(dataset.meta.ebn0_db, int(math.log2(dataset.meta.order)))
    return [ChannelInstance(H=h, noise_variance=n0) for h in dataset.channels]


def clean_signal(dataset: Dataset, slots: int | None = None) -> np.ndarray:
    """Noiseless counterpart of ``dataset.inputs``."""
    if dataset.channels is None:
        raise ParameterError("dataset carries no channel realizations")
    coherence = dataset.meta.coherence or len(dataset)
    block_of = np.arange(len(dataset)) // coherence
    received = np.einsum("nrt,nt->nr", dataset.channels[block_of], dataset.targets)
    if slots is None:
        slots = dataset.n_inputs // received.shape[1]
    return np.tile(received, (1, slots))


def split_dataset(dataset: Dataset, n_train: int) -> tuple[Dataset, Dataset]:
    if not 1 <= n_train < len(dataset):
        raise ParameterError(f"n_train must be in [1, {len(dataset) - 1}], got {n_train}")
    return dataset.subset(0, n_train), dataset.subset(n_train)
