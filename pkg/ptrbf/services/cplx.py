from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ptrbf.core.errors import DimensionError, ParameterError

Distribution = Literal["uniform", "gaussian"]

_SEED_LIMIT = 2**64


class Rng:
    """Seeded PCG64 stream. Identical (seed, keys) give an identical sample stream."""

    algorithm = "PCG64"

    def __init__(self, seed: int, keys: tuple[int, ...] = ()) -> None:
        seed = int(seed)
        if not 0 <= seed < _SEED_LIMIT:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed
        self.keys = tuple(int(k) for k in keys)
        sequence = np.random.SeedSequence(entropy=seed, spawn_key=self.keys)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def child(self, *keys: int) -> Rng:
        """Independent stream addressed by ``keys``; does not advance this stream."""
        return Rng(self.seed, self.keys + tuple(keys))

    def spawn(self, n: int) -> list[Rng]:
        return [self.child(i) for i in range(n)]

    def uniform(self, low: float, high: float, size=None) -> np.ndarray:
        return self.generator.uniform(low, high, size)

    def normal(self, scale: float, size=None) -> np.ndarray:
        return self.generator.normal(0.0, scale, size)

    def integers(self, high: int, size=None) -> np.ndarray:
        return self.generator.integers(0, high, size)

    def permutation(self, n: int) -> np.ndarray:
        return self.generator.permutation(n)

    def choice(self, n: int, size: int, replace: bool = True) -> np.ndarray:
        return self.generator.choice(n, size=size, replace=replace)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed}, keys={self.keys}, algorithm={self.algorithm})"


@dataclass(frozen=True)
class ComplexSpec:
    """Total complex variance sigma^2 = Var[Re z] + Var[Im z] around ``mean``."""

    variance: float
    mean: complex = 0j

    def __post_init__(self) -> None:
        if not np.isfinite(self.variance) or self.variance < 0:
            raise ParameterError(f"variance must be >= 0, got {self.variance}")


ComplexUniformSpec = ComplexSpec


def sample_complex_uniform(rng: Rng, spec: ComplexUniformSpec, dims) -> np.ndarray:
    # each axis uniform on [-a, a] with a^2 / 3 = variance / 2
    half_width = np.sqrt(1.5 * spec.variance)
    re = rng.uniform(-half_width, half_width, dims)
    im = rng.uniform(-half_width, half_width, dims)
    return spec.mean + (re + 1j * im)


def sample_complex_gaussian(rng: Rng, spec: ComplexSpec, dims) -> np.ndarray:
    std = np.sqrt(0.5 * spec.variance)
    re = rng.normal(std, dims)
    im = rng.normal(std, dims)
    return spec.mean + (re + 1j * im)


def sample_complex(rng: Rng, variance: float, dims, distribution: Distribution = "uniform") -> np.ndarray:
    spec = ComplexSpec(variance=variance)
    if distribution == "uniform":
        return sample_complex_uniform(rng, spec, dims)
    if distribution == "gaussian":
        return sample_complex_gaussian(rng, spec, dims)
    raise ParameterError(f"unknown distribution {distribution!r}")


def squared_l2_distance(a: np.ndarray, b: np.ndarray) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionError(f"length mismatch: {a.shape} != {b.shape}")
    diff = a - b
    return float(np.sum(diff * diff))


def component_variances(z: np.ndarray) -> tuple[float, float]:
    z = np.asarray(z, dtype=np.complex128)
    return float(np.var(z.real)), float(np.var(z.imag))


def complex_variance(z: np.ndarray) -> float:
    re, im = component_variances(z)
    return re + im


def is_finite(z: np.ndarray) -> bool:
    return bool(np.all(np.isfinite(z)))
