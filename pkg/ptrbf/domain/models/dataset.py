from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ptrbf.core.errors import DimensionError


@dataclass(frozen=True)
class AxisStats:
    """Normalization statistics of one side (inputs or targets) of a dataset."""

    mean: complex
    variance_re: float
    variance_im: float
    width: int
    target_variance: float
    asymmetric: bool

    @property
    def variance(self) -> float:
        return self.variance_re + self.variance_im

    @property
    def scale(self) -> float:
        return float(np.sqrt(self.target_variance))


@dataclass(frozen=True)
class NormStats:
    inputs: AxisStats | None = None
    outputs: AxisStats | None = None

    def merge(self, other: NormStats) -> NormStats:
        return NormStats(
            inputs=other.inputs if other.inputs is not None else self.inputs,
            outputs=other.outputs if other.outputs is not None else self.outputs,
        )


@dataclass(frozen=True)
class DatasetMeta:
    seed: int | None = None
    ebn0_db: float | None = None
    order: int | None = None
    channel: str | None = None
    coherence: int | None = None


@dataclass
class Dataset:
    inputs: np.ndarray  # N x P
    targets: np.ndarray  # N x R
    meta: DatasetMeta = field(default_factory=DatasetMeta)
    stats: NormStats = field(default_factory=NormStats)
    channels: np.ndarray | None = None  # one H per coherence block
    alphabet: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.inputs = np.atleast_2d(np.asarray(self.inputs, dtype=np.complex128))
        self.targets = np.atleast_2d(np.asarray(self.targets, dtype=np.complex128))
        if self.inputs.shape[0] != self.targets.shape[0]:
            raise DimensionError(
                f"inputs and targets differ in count: {self.inputs.shape[0]} != {self.targets.shape[0]}"
            )

    def __len__(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def n_inputs(self) -> int:
        return int(self.inputs.shape[1])

    @property
    def n_outputs(self) -> int:
        return int(self.targets.shape[1])

    def with_arrays(self, inputs: np.ndarray | None = None, targets: np.ndarray | None = None, stats: NormStats | None = None) -> Dataset:
        return replace(
            self,
            inputs=self.inputs if inputs is None else inputs,
            targets=self.targets if targets is None else targets,
            stats=self.stats if stats is None else stats,
        )

    def subset(self, start: int, stop: int | None = None) -> Dataset:
        return self.with_arrays(inputs=self.inputs[start:stop].copy(), targets=self.targets[start:stop].copy())
