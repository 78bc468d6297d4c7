from __future__ import annotations

import hashlib
import json
from enum import Enum
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ptrbf.core.errors import ParameterError

CONFIG_VERSION = 1

ARCHITECTURE_PRESETS: dict[int, list[int]] = {
    1: [64],
    2: [48, 16],
    3: [24, 24, 16],
    4: [16, 16, 16, 16],
}


class Scheme(str, Enum):
    random = "random"
    kmeans = "kmeans"
    constellation = "constellation"
    proposed = "proposed"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class InitSpec(_Strict):
    scheme: Scheme = Scheme.proposed
    c_sigma: float = 1.0
    mu_v: float = 1.0
    gamma_variance: float = 1.0
    distribution: Literal["uniform", "gaussian"] = "uniform"
    variance_floor: float | None = None
    constellation_order: int = 16

    def check(self) -> None:
        if not self.c_sigma > 0:
            raise ParameterError(f"c_sigma must be > 0, got {self.c_sigma}")
        if not self.mu_v > 0:
            raise ParameterError(f"mu_v must be > 0, got {self.mu_v}")
        if self.scheme == Scheme.random and not self.gamma_variance > 0:
            raise ParameterError(f"gamma_variance must be > 0, got {self.gamma_variance}")
        if self.variance_floor is not None and not self.variance_floor > 0:
            raise ParameterError(f"variance_floor must be > 0, got {self.variance_floor}")


class LayerRates(_Strict):
    w: float = Field(ge=0)
    b: float = Field(ge=0)
    gamma: float = Field(ge=0)
    sigma: float = Field(ge=0)


class TrainConfig(_Strict):
    epochs: int = Field(default=200, ge=0)
    rates: list[LayerRates]
    shuffle_seed: int = Field(default=0, ge=0)
    gradient_mode: Literal["per-sample"] = "per-sample"

    def rates_for(self, index: int) -> LayerRates:
        return self.rates[min(index, len(self.rates) - 1)]

    def config_hash(self) -> str:
        payload = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


class DatasetConfig(_Strict):
    count: int = 5120
    ebn0_db: float = 26.0
    seed: int = Field(default=0, ge=0)
    order: int = 16
    n_tx: int = Field(default=4, ge=1)
    n_rx: int = Field(default=4, ge=1)
    slots: int = Field(default=4, ge=1)
    channel: Literal["rayleigh", "identity"] = "rayleigh"
    coherence: int | None = Field(default=None, ge=1)


class InitSettings(_Strict):
    c_sigma: float = 1.0
    mu_v: float = 1.0
    gamma_variance: float = 1.0
    distribution: Literal["uniform", "gaussian"] = "uniform"
    variance_floor: float | None = None

    def spec_for(self, scheme: Scheme, order: int = 16) -> InitSpec:
        return InitSpec(scheme=scheme, constellation_order=order, **self.model_dump())


class ExperimentConfig(_Strict):
    version: Literal[1] = CONFIG_VERSION
    architectures: list[list[int]] = Field(default_factory=lambda: [[64]])
    schemes: list[Scheme] = Field(
        default_factory=lambda: [Scheme.proposed, Scheme.kmeans, Scheme.constellation, Scheme.random]
    )
    init: InitSettings = Field(default_factory=InitSettings)
    epochs: int = Field(default=200, ge=0)
    rates: list[LayerRates] | None = None
    train_count: int = Field(default=3840, ge=1)
    val_count: int = Field(default=1280, ge=1)
    ebn0_db: float = 26.0
    order: int = 16
    channel: Literal["rayleigh", "identity"] = "rayleigh"
    coherence: int | None = Field(default=None, ge=1)
    runs: int = Field(default=10, ge=1)
    seed: int = Field(default=0, ge=0)
    threads: int | None = Field(default=None, ge=1)
    output_dir: str | None = None
    mse_threshold_db: float | None = None
    steady_state_tail: int = Field(default=10, ge=1)

    @model_validator(mode="after")
    def _check(self) -> ExperimentConfig:
        if not self.architectures or any(not arch for arch in self.architectures):
            raise ValueError("architectures must be a nonempty list of nonempty neuron lists")
        if any(n <= 0 for arch in self.architectures for n in arch):
            raise ValueError("neuron counts must be > 0")
        if not self.schemes:
            raise ValueError("schemes must not be empty")
        for scheme in self.schemes:
            self.init.spec_for(scheme, self.order).check()
        return self

    def dataset_config(self, seed: int) -> DatasetConfig:
        return DatasetConfig(
            count=self.train_count + self.val_count,
            ebn0_db=self.ebn0_db,
            seed=seed,
            order=self.order,
            channel=self.channel,
            coherence=self.coherence,
        )


class StatsConfig(_Strict):
    version: Literal[1] = CONFIG_VERSION
    inputs: int = Field(default=16, ge=2)
    neurons: int = Field(default=64, ge=2)
    outputs: int = Field(default=4, ge=1)
    c_sigma: float = 1.0
    mu_v: float = 1.0
    distribution: Literal["uniform", "gaussian"] = "uniform"
    trials: int = 100_000
    group_size: int = Field(default=100, ge=2)
    seed: int = Field(default=0, ge=0)
    threads: int | None = Field(default=None, ge=1)
    tolerance_mean_v: float = 0.05
    tolerance_var_v: float = 0.15
    tolerance_var_y: float = 0.25
    output_dir: str | None = None


class DumpConfig(_Strict):
    version: Literal[1] = CONFIG_VERSION
    architecture: list[int] = Field(default_factory=lambda: [64])
    scheme: Scheme = Scheme.proposed
    init: InitSettings = Field(default_factory=InitSettings)
    dataset: DatasetConfig = Field(default_factory=lambda: DatasetConfig(count=3840))
    seed: int = Field(default=0, ge=0)
    bins: int = Field(default=50, ge=1)
    output_dir: str | None = None
