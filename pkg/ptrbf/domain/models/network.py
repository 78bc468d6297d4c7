from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ptrbf.core.errors import DimensionError, ParameterError


@dataclass(frozen=True)
class NetworkDims:
    """Widths of a deep PT-RBF: P inputs, I^{l} neurons and O^{l} outputs per layer."""

    inputs: int
    neurons: tuple[int, ...]
    outputs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.inputs <= 0:
            raise DimensionError(f"inputs must be > 0, got {self.inputs}")
        if not self.neurons:
            raise DimensionError("a network needs at least one layer")
        if len(self.neurons) != len(self.outputs):
            raise DimensionError(
                f"neurons and outputs differ in length: {len(self.neurons)} != {len(self.outputs)}"
            )
        for n in (*self.neurons, *self.outputs):
            if n <= 0:
                raise DimensionError(f"layer widths must be > 0, got {n}")

    @classmethod
    def from_architecture(
        cls,
        inputs: int,
        neurons: list[int] | tuple[int, ...],
        n_outputs: int,
        hidden_outputs: list[int] | tuple[int, ...] | None = None,
    ) -> NetworkDims:
        neurons = tuple(int(n) for n in neurons)
        if hidden_outputs is None:
            # O^{l} = I^{l+1} below the last layer
            hidden_outputs = neurons[1:]
        if len(hidden_outputs) != len(neurons) - 1:
            raise DimensionError(
                f"expected {len(neurons) - 1} hidden output widths, got {len(hidden_outputs)}"
            )
        return cls(inputs=int(inputs), neurons=neurons, outputs=(*map(int, hidden_outputs), int(n_outputs)))

    @property
    def depth(self) -> int:
        return len(self.neurons)

    def fan_in(self, index: int) -> int:
        """O^{l-1} for the 0-based layer ``index`` (P for the first layer)."""
        return self.inputs if index == 0 else self.outputs[index - 1]


@dataclass
class PtRbfLayer:
    weights: np.ndarray  # W: O x I
    bias: np.ndarray  # b: O
    centers: np.ndarray  # Gamma: I x O^{l-1}
    variances: np.ndarray  # sigma: I

    @property
    def n_inputs(self) -> int:
        return int(self.centers.shape[1])

    @property
    def n_neurons(self) -> int:
        return int(self.centers.shape[0])

    @property
    def n_outputs(self) -> int:
        return int(self.weights.shape[0])

    def validate(self) -> None:
        if self.centers.ndim != 2 or self.weights.ndim != 2:
            raise DimensionError("centers and weights must be matrices")
        i, o = self.n_neurons, self.n_outputs
        if self.weights.shape != (o, i):
            raise DimensionError(f"weights shape {self.weights.shape} != {(o, i)}")
        if self.bias.shape != (o,):
            raise DimensionError(f"bias shape {self.bias.shape} != {(o,)}")
        if self.variances.shape != (i,):
            raise DimensionError(f"variances shape {self.variances.shape} != {(i,)}")
        for name in ("weights", "bias", "centers", "variances"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise ParameterError(f"{name} contains non-finite values")
        if np.any(self.variances.real <= 0) or np.any(self.variances.imag <= 0):
            raise ParameterError("variance components must be > 0")

    def copy(self) -> PtRbfLayer:
        return PtRbfLayer(
            weights=self.weights.copy(),
            bias=self.bias.copy(),
            centers=self.centers.copy(),
            variances=self.variances.copy(),
        )


@dataclass
class PtRbfNetwork:
    layers: list[PtRbfLayer]

    @property
    def depth(self) -> int:
        return len(self.layers)

    @property
    def inputs(self) -> int:
        return self.layers[0].n_inputs

    @property
    def outputs(self) -> int:
        return self.layers[-1].n_outputs

    @property
    def dims(self) -> NetworkDims:
        return NetworkDims(
            inputs=self.inputs,
            neurons=tuple(layer.n_neurons for layer in self.layers),
            outputs=tuple(layer.n_outputs for layer in self.layers),
        )

    def validate(self) -> None:
        if not self.layers:
            raise DimensionError("a network needs at least one layer")
        width = self.inputs
        for index, layer in enumerate(self.layers):
            layer.validate()
            if layer.n_inputs != width:
                raise DimensionError(
                    f"layer {index + 1} expects {layer.n_inputs} inputs but receives {width}"
                )
            width = layer.n_outputs

    def copy(self) -> PtRbfNetwork:
        return PtRbfNetwork(layers=[layer.copy() for layer in self.layers])

    def identical(self, other: PtRbfNetwork) -> bool:
        """Bit-exact parameter equality."""
        if self.depth != other.depth:
            return False
        for a, b in zip(self.layers, other.layers):
            for name in ("weights", "bias", "centers", "variances"):
                x, y = getattr(a, name), getattr(b, name)
                if x.shape != y.shape or x.tobytes() != y.tobytes():
                    return False
        return True


@dataclass
class LayerTrace:
    v: np.ndarray
    phi: np.ndarray
    y: np.ndarray


@dataclass
class ForwardTrace:
    inputs: np.ndarray
    layers: list[LayerTrace] = field(default_factory=list)

    @property
    def output(self) -> np.ndarray:
        return self.layers[-1].y

    def layer_input(self, index: int) -> np.ndarray:
        return self.inputs if index == 0 else self.layers[index - 1].y
