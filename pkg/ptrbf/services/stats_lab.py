# float variances are total complex variances split evenly; a (re, im) tuple gives the parts
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from ptrbf.core.errors import ParameterError
from ptrbf.domain.models.moment_report import ConventionCheck, MomentEstimate, MomentReport
from ptrbf.domain.models.network import NetworkDims
from ptrbf.schemas.config import InitSpec, Scheme, StatsConfig
from ptrbf.services.cplx import Rng, sample_complex
from ptrbf.services.init.proposed import init_proposed, proposed_center_variance, proposed_weight_variance
from ptrbf.services.network import kernel, kernel_inputs
from ptrbf.services.worker_pool import get_pool

logger = logging.getLogger(__name__)

Convention = Literal["total", "component"]
Variance = float | tuple[float, float]

MIN_TRIALS = 10_000


def _parts(variance: Variance) -> tuple[float, float]:
    if isinstance(variance, tuple):
        re, im = variance
        return float(re), float(im)
    return 0.5 * float(variance), 0.5 * float(variance)


def _check_positive(**values: float) -> None:
    for name, value in values.items():
        if not value > 0:
            raise ParameterError(f"{name} must be > 0, got {value}")


def _check_nonnegative(**values: float) -> None:
    for name, value in values.items():
        if value < 0 or not math.isfinite(value):
            raise ParameterError(f"{name} must be >= 0, got {value}")


def _sigma4(gamma_variance: float, convention: Convention) -> float:
    if convention == "total":
        return gamma_variance**2
    if convention == "component":
        return (0.5 * gamma_variance) ** 2
    raise ParameterError(f"unknown convention {convention!r}")


def expected_v_closed(fan_in: int, c_sigma: float, prev_variance: Variance, gamma_variance: Variance) -> complex:
    _check_positive(fan_in=fan_in, c_sigma=c_sigma)
    yr, yi = _parts(prev_variance)
    gr, gi = _parts(gamma_variance)
    _check_nonnegative(prev_re=yr, prev_im=yi, gamma_re=gr, gamma_im=gi)
    return complex(fan_in * (yr + gr) / c_sigma, fan_in * (yi + gi) / c_sigma)


def var_v_closed(
    fan_in: int,
    c_sigma: float,
    gamma_variance: float,
    convention: Convention = "total",
    finite_size: bool = False,
    prev_variance: float | None = None,
) -> float:
    """Variance of v across the neurons; ``finite_size`` keeps the (n-3)/(n-1) term on per-part variances."""
    _check_positive(fan_in=fan_in, c_sigma=c_sigma)
    _check_nonnegative(gamma_variance=gamma_variance)
    if not finite_size:
        return 12.0 / 5.0 * fan_in * _sigma4(gamma_variance, convention) / c_sigma**2
    if fan_in < 2:
        raise ParameterError(f"finite-size variance needs fan_in >= 2, got {fan_in}")
    if prev_variance is None:
        prev_variance = gamma_variance
    _check_nonnegative(prev_variance=prev_variance)
    s_gamma = 0.5 * gamma_variance
    s_y = 0.5 * prev_variance
    kurtosis_term = 1.8 - (fan_in - 3) / (fan_in - 1)
    return 2.0 * (fan_in / c_sigma) ** 2 * (4.0 * s_y * s_gamma + kurtosis_term * s_gamma**2) / fan_in


def var_y_closed(
    neurons: int,
    fan_in: int,
    c_sigma: float,
    mu_v: float,
    weight_variance: float,
    gamma_variance: float,
    convention: Convention = "total",
) -> float:
    _check_positive(neurons=neurons, fan_in=fan_in, c_sigma=c_sigma, mu_v=mu_v)
    _check_nonnegative(weight_variance=weight_variance, gamma_variance=gamma_variance)
    return (
        12.0
        / 5.0
        * math.exp(-2.0 * mu_v)
        * neurons
        * fan_in
        * weight_variance
        * _sigma4(gamma_variance, convention)
        / c_sigma**2
    )


# E[exp(-k v)] for v ~ N(mean, variance) restricted to v >= 0


def kernel_mean_exact(mean: float, variance: float, k: float = 1.0) -> float:
    _check_positive(variance=variance)
    lognormal = math.exp(0.5 * k * k * variance - k * mean)
    return lognormal * 0.5 * (1.0 + math.erf((mean - k * variance) / math.sqrt(2.0 * variance)))


def kernel_mean_approx(mean: float, variance: float, k: float = 1.0) -> float:
    """Large-mean form: the error-function factor tends to 1."""
    _check_nonnegative(variance=variance)
    return math.exp(0.5 * k * k * variance - k * mean)


def kernel_second_moment_approx(mean: float, variance: float) -> float:
    return kernel_mean_approx(mean, variance, k=2.0)


def kernel_variance_approx(mean: float, variance: float) -> float:
    return kernel_second_moment_approx(mean, variance) - kernel_mean_approx(mean, variance) ** 2


@dataclass
class _GroupMoments:
    v_sum: complex
    v_count: int
    var_v_sum: float
    var_y: float


def _relative(mc: complex | float, closed: complex | float) -> float:
    if closed == 0:
        return abs(mc)
    return abs(mc - closed) / abs(closed)


def _group(config: StatsConfig, spec: InitSpec, dims: NetworkDims, rng: Rng, size: int) -> _GroupMoments:
    layer = init_proposed(dims, spec, rng).layers[0]
    inputs = sample_complex(rng, spec.c_sigma * spec.mu_v / config.inputs, (size, config.inputs), spec.distribution)
    v = kernel_inputs(layer, inputs)  # size x neurons
    y = kernel(v) @ layer.weights.T + layer.bias  # size x outputs
    var_v = np.var(v.real, axis=1, ddof=1) + np.var(v.imag, axis=1, ddof=1)
    var_y = np.var(y.real, axis=0, ddof=1) + np.var(y.imag, axis=0, ddof=1)
    return _GroupMoments(
        v_sum=complex(v.sum()),
        v_count=int(v.size),
        var_v_sum=float(var_v.sum()),
        var_y=float(var_y.mean()),
    )


def mc_estimate(config: StatsConfig, rng: Rng | None = None, threads: int | None = None) -> MomentEstimate:
    # one layer per group of inputs; Var[v] over neurons, Var[y] over the inputs of a group
    if config.trials < MIN_TRIALS:
        raise ParameterError(f"trials must be >= {MIN_TRIALS}, got {config.trials}")
    if rng is None:
        rng = Rng(config.seed)
    spec = InitSpec(scheme=Scheme.proposed, c_sigma=config.c_sigma, mu_v=config.mu_v, distribution=config.distribution)
    spec.check()
    dims = NetworkDims(inputs=config.inputs, neurons=(config.neurons,), outputs=(config.outputs,))
    groups = math.ceil(config.trials / config.group_size)
    sizes = [config.group_size] * groups
    sizes[-1] = config.trials - config.group_size * (groups - 1)
    if sizes[-1] < 2:
        sizes[-2] += sizes.pop()
        groups -= 1

    logger.info(
        "mc start trials=%d groups=%d inputs=%d neurons=%d outputs=%d",
        config.trials,
        groups,
        config.inputs,
        config.neurons,
        config.outputs,
    )
    pool = get_pool(threads if threads is not None else config.threads)
    parts = pool.map(lambda g: _group(config, spec, dims, rng.child(g), sizes[g]), range(groups))

    v_count = sum(p.v_count for p in parts)
    mean_v = sum(p.v_sum for p in parts) / v_count
    var_v = sum(p.var_v_sum for p in parts) / config.trials
    per_group_var_v = np.array([p.var_v_sum / s for p, s in zip(parts, sizes)])
    per_group_var_y = np.array([p.var_y for p in parts])
    var_y = float(per_group_var_y.mean())
    stderr_v = float(per_group_var_v.std(ddof=1) / math.sqrt(groups)) if groups > 1 else 0.0
    stderr_y = float(per_group_var_y.std(ddof=1) / math.sqrt(groups)) if groups > 1 else 0.0

    gamma_var = proposed_center_variance(config.inputs, config.c_sigma, config.mu_v)
    weight_var = proposed_weight_variance(config.inputs, config.neurons, config.outputs, config.c_sigma, config.mu_v)
    input_var = config.c_sigma * config.mu_v / config.inputs
    closed_mean = expected_v_closed(config.inputs, config.c_sigma, input_var, gamma_var)
    closed_var_v = {c: var_v_closed(config.inputs, config.c_sigma, gamma_var, c) for c in ("total", "component")}
    closed_var_y = {
        c: var_y_closed(config.neurons, config.inputs, config.c_sigma, config.mu_v, weight_var, gamma_var, c)
        for c in ("total", "component")
    }
    checks = (
        ConventionCheck("var_v", var_v, closed_var_v["total"], closed_var_v["component"]),
        ConventionCheck("var_y", var_y, closed_var_y["total"], closed_var_y["component"]),
    )
    convention = checks[0].matched
    logger.info(
        "mc done mean_v=%s var_v=%.5f var_y=%.5f convention=%s", f"{mean_v:.5f}", var_v, var_y, convention
    )
    return MomentEstimate(
        mean_v=MomentReport(
            quantity="mean_v",
            closed_form=closed_mean,
            monte_carlo=complex(mean_v),
            samples=v_count,
            deviation=_relative(complex(mean_v), closed_mean),
            tolerance=config.tolerance_mean_v,
        ),
        var_v=MomentReport(
            quantity="var_v",
            closed_form=closed_var_v[convention],
            monte_carlo=var_v,
            samples=config.trials,
            deviation=_relative(var_v, closed_var_v[convention]),
            tolerance=config.tolerance_var_v,
            stderr=stderr_v,
        ),
        var_y=MomentReport(
            quantity="var_y",
            closed_form=closed_var_y[convention],
            monte_carlo=var_y,
            samples=config.trials,
            deviation=_relative(var_y, closed_var_y[convention]),
            tolerance=config.tolerance_var_y,
            stderr=stderr_y,
        ),
        checks=checks,
    )
