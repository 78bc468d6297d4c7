from __future__ import annotations

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ptrbf.core.errors import DimensionError
from ptrbf.domain.models.network import PtRbfLayer, PtRbfNetwork

NETWORK_FORMAT = "ptrbf-network"
NETWORK_VERSION = 1


class ComplexArray(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shape: list[int]
    re: list[float]
    im: list[float]

    @classmethod
    def from_array(cls, values: np.ndarray) -> ComplexArray:
        values = np.asarray(values, dtype=np.complex128)
        return cls(
            shape=list(values.shape),
            re=[float(x) for x in values.real.ravel()],
            im=[float(x) for x in values.imag.ravel()],
        )

    def to_array(self) -> np.ndarray:
        re = np.asarray(self.re, dtype=np.float64)
        im = np.asarray(self.im, dtype=np.float64)
        out = np.empty(re.shape, dtype=np.complex128)
        out.real = re
        out.imag = im
        return out.reshape(self.shape)


class LayerDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    weights: ComplexArray
    bias: ComplexArray
    centers: ComplexArray
    variances: ComplexArray


class DimsDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    inputs: int = Field(ge=1)
    neurons: list[int]
    outputs: list[int]


class NetworkDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    format: Literal["ptrbf-network"] = NETWORK_FORMAT
    version: Literal[1] = NETWORK_VERSION
    dims: DimsDoc
    scheme: str | None = None
    seed: int | None = None
    layers: list[LayerDoc]

    @classmethod
    def from_network(cls, net: PtRbfNetwork, scheme: str | None = None, seed: int | None = None) -> NetworkDocument:
        dims = net.dims
        return cls(
            dims=DimsDoc(inputs=dims.inputs, neurons=list(dims.neurons), outputs=list(dims.outputs)),
            scheme=scheme,
            seed=seed,
            layers=[
                LayerDoc(
                    weights=ComplexArray.from_array(layer.weights),
                    bias=ComplexArray.from_array(layer.bias),
                    centers=ComplexArray.from_array(layer.centers),
                    variances=ComplexArray.from_array(layer.variances),
                )
                for layer in net.layers
            ],
        )

    def to_network(self) -> PtRbfNetwork:
        net = PtRbfNetwork(
            layers=[
                PtRbfLayer(
                    weights=layer.weights.to_array(),
                    bias=layer.bias.to_array(),
                    centers=layer.centers.to_array(),
                    variances=layer.variances.to_array(),
                )
                for layer in self.layers
            ]
        )
        net.validate()
        dims = net.dims
        declared = (self.dims.inputs, self.dims.neurons, self.dims.outputs)
        if (dims.inputs, list(dims.neurons), list(dims.outputs)) != declared:
            raise DimensionError("layer arrays do not match the declared dims")
        return net
