from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class LayerGradients:
    """dE/dRe(theta) + j dE/dIm(theta) for each parameter class of one layer."""

    weights: np.ndarray
    bias: np.ndarray
    centers: np.ndarray
    variances: np.ndarray

    def is_finite(self) -> bool:
        return all(
            bool(np.all(np.isfinite(g))) for g in (self.weights, self.bias, self.centers, self.variances)
        )


@dataclass
class Gradients:
    layers: list[LayerGradients]
