from __future__ import annotations

import logging

import numpy as np

from ptrbf.core.errors import ParameterError
from ptrbf.domain.models.network import NetworkDims, PtRbfNetwork
from ptrbf.schemas.config import InitSpec, Scheme
from ptrbf.services.cplx import Rng

from .constellation import constellation_variance, init_constellation
from .kmeans import init_kmeans, split_kmeans
from .normalization import (
    apply_normalization,
    denormalize_outputs,
    normalize_dataset,
    normalize_inputs,
    normalize_outputs,
    normalize_symbols,
)
from .proposed import init_proposed, proposed_center_variance, proposed_weight_variance
from .random_init import init_random

logger = logging.getLogger(__name__)


def initialize(
    dims: NetworkDims,
    spec: InitSpec,
    rng: Rng,
    inputs: np.ndarray | None = None,
    constellation: np.ndarray | None = None,
) -> PtRbfNetwork:
    if spec.scheme == Scheme.random:
        net = init_random(dims, spec, rng)
    elif spec.scheme == Scheme.proposed:
        net = init_proposed(dims, spec, rng)
    elif spec.scheme == Scheme.kmeans:
        if inputs is None:
            raise ParameterError("kmeans initialization needs the training inputs")
        net = init_kmeans(dims, inputs, spec, rng)
    elif spec.scheme == Scheme.constellation:
        if constellation is None:
            raise ParameterError("constellation initialization needs the symbol alphabet")
        net = init_constellation(dims, constellation, rng, spec)
    else:
        raise ParameterError(f"unknown scheme {spec.scheme!r}")
    logger.debug("initialized scheme=%s neurons=%s", spec.scheme.value, list(dims.neurons))
    return net


__all__ = [
    "apply_normalization",
    "constellation_variance",
    "denormalize_outputs",
    "init_constellation",
    "init_kmeans",
    "init_proposed",
    "init_random",
    "initialize",
    "normalize_dataset",
    "normalize_inputs",
    "normalize_outputs",
    "normalize_symbols",
    "proposed_center_variance",
    "proposed_weight_variance",
    "split_kmeans",
]
