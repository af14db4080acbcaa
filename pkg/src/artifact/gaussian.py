"""Scalar Gaussian reference model with an additive context shift.

Each sensor sees the source through independent Gaussian noise plus a
shift the fusion center already knows; sensors forward their
observation through an additive Gaussian test channel.  Everything of
interest has a closed form here, which makes the model the analytic
cross-check for the finite-alphabet machinery: discretize it onto a
fine grid and the two routes must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtr

from .chernoff import ChernoffResult
from .errors import ConfigurationError

WINDOW_PAD_SIGMAS = 12.0


@dataclass(frozen=True)
class GaussianScenario:
    """Variances of the sensing noise, context shift, and channel dither."""

    sigma_n2: float
    sigma_s2: float
    sigma_v2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.sigma_n2) and self.sigma_n2 > 0.0):
            raise ConfigurationError(
                f"sigma_n2 must be a positive real, got {self.sigma_n2!r}")
        if not (math.isfinite(self.sigma_s2) and self.sigma_s2 >= 0.0):
            raise ConfigurationError(
                f"sigma_s2 must be a nonnegative real, got {self.sigma_s2!r}")
        if not (math.isfinite(self.sigma_v2) and self.sigma_v2 > 0.0):
            raise ConfigurationError(
                f"sigma_v2 must be a positive real, got {self.sigma_v2!r}")


def _positive(value: float, name: str) -> float:
    value = float(value)
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be a positive real, got {value!r}")
    return value


def gaussian_rate(scenario: GaussianScenario) -> float:
    """Per-sensor rate of the additive Gaussian test channel, in nats."""
    return 0.5 * math.log1p(scenario.sigma_n2 / scenario.sigma_v2)


def gaussian_exponent(scenario: GaussianScenario) -> ChernoffResult:
    """Best-tilt exponent for a unit source step; the tilt is exactly 1/2."""
    value = 1.0 / (8.0 * (scenario.sigma_n2 + scenario.sigma_v2))
    return ChernoffResult(value=value, lambda_star=0.5)


def alpha_with_context(sigma_n2: float) -> float:
    """Vanishing-rate exponent per unit rate when the decoder knows the shift."""
    return 1.0 / (4.0 * _positive(sigma_n2, "sigma_n2"))


def alpha_without_context(sigma_n2: float, sigma_s2: float) -> float:
    """Same limit when the shift must be treated as extra sensing noise."""
    sigma_n2 = _positive(sigma_n2, "sigma_n2")
    sigma_s2 = float(sigma_s2)
    if not (math.isfinite(sigma_s2) and sigma_s2 >= 0.0):
        raise ValueError(f"sigma_s2 must be a nonnegative real, got {sigma_s2!r}")
    return 1.0 / (4.0 * (sigma_n2 + sigma_s2))


def context_gain_table(sigma_s2: float,
                       sigma_n2_grid: Sequence[float]) -> list[tuple[float, float, float]]:
    """Rows (sigma_n2, alpha_with, alpha_without) over a noise-variance grid."""
    grid = [float(v) for v in sigma_n2_grid]
    if not grid:
        raise ValueError("sigma_n2_grid must be nonempty")
    return [(n2, alpha_with_context(n2), alpha_without_context(n2, sigma_s2))
            for n2 in grid]


def default_window(means: Sequence[float], sigma2: float) -> tuple[float, float]:
    """[min mean - 12 sigma, max mean + 12 sigma]; tail mass is negligible."""
    sigma = math.sqrt(_positive(sigma2, "sigma2"))
    vals = [float(m) for m in means]
    if not vals:
        raise ValueError("means must be nonempty")
    return min(vals) - WINDOW_PAD_SIGMAS * sigma, max(vals) + WINDOW_PAD_SIGMAS * sigma


def discretize_normal(mean: float, sigma2: float,
                      lo: float, hi: float, step: float) -> np.ndarray:
    """Bin masses of N(mean, sigma2) on a uniform grid over [lo, hi].

    Mass beyond the window is dropped, not folded into the edge bins;
    with a 12-sigma window the loss is far below the pmf tolerance, and
    a deliberately narrow window raises instead of silently
    renormalizing.
    """
    sigma = math.sqrt(_positive(sigma2, "sigma2"))
    step = _positive(step, "step")
    lo, hi = float(lo), float(hi)
    if not hi > lo:
        raise ValueError(f"window [{lo!r}, {hi!r}] is empty")
    bins = round((hi - lo) / step)
    if bins < 1:
        raise ValueError("window is narrower than one step")
    edges = lo + step * np.arange(bins + 1)
    masses = np.diff(ndtr((edges - float(mean)) / sigma))
    return masses
