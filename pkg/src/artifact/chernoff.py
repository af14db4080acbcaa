"""Tilted divergences between finite distributions and their best tilt.

The central quantity is -log sum_z p0(z)^(1-lam) p1(z)^lam for a tilt
lam in [0, 1].  It is concave in lam, zero at both endpoints for
distributions with identical support, and +inf when the supports are
disjoint.  The best-tilt value governs the exponential decay rate of
pairwise decision errors when many independent looks are fused.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import ConfigurationError
from .prob import PMF_ATOL, CodewordChannel

LAMBDA_ABS_TOL = 1e-8
PLATEAU_TOL = 1e-12
GOLDEN_MAX_ITER = 200
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ChernoffResult:
    """A best-tilt divergence value and the tilt achieving it.

    value is nonnegative and becomes math.inf when the two supports are
    disjoint; lambda_star always lies in [0, 1] and is reported as 0.5
    for the infinite and everywhere-flat cases.
    """

    value: float
    lambda_star: float


def _checked_pmf(p: object, name: str) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1:
        raise ConfigurationError(f"{name}: expected a 1-dimensional pmf, got shape {arr.shape}")
    if arr.size < 1:
        raise ConfigurationError(f"{name}: pmf must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ConfigurationError(f"{name}: entries must be finite")
    if float(arr.min()) < 0.0:
        raise ConfigurationError(f"{name}: entries must be nonnegative")
    total = float(arr.sum())
    if abs(total - 1.0) > PMF_ATOL:
        raise ConfigurationError(f"{name}: sums to {total!r}, not 1 within {PMF_ATOL}")
    return arr


def _common_support_logs(p0: np.ndarray, p1: np.ndarray):
    """Log masses restricted to the shared support, or None when disjoint."""
    common = (p0 > 0.0) & (p1 > 0.0)
    if not bool(common.any()):
        return None
    return np.log(p0[common]), np.log(p1[common])


def _tilted_value(lp0: np.ndarray, lp1: np.ndarray, lam: float) -> float:
    # Holder gives sum <= 1 for exact pmfs, so clamp float dust below zero.
    v = -float(logsumexp((1.0 - lam) * lp0 + lam * lp1))
    return v if v > 0.0 else 0.0


def chernoff_divergence(p0: object, p1: object, lam: float) -> float:
    """Tilted divergence -log sum_z p0^(1-lam) p1^lam at a fixed tilt.

    Terms with a zero in either pmf drop out of the sum (the 0^0 = 0
    convention, applied at the endpoints lam = 0 and lam = 1 as well),
    and fully disjoint supports give math.inf.  Raises ValueError for a
    tilt outside [0, 1] and ConfigurationError for malformed pmfs.
    """
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"tilt must lie in [0, 1], got {lam!r}")
    a0 = _checked_pmf(p0, "p0")
    a1 = _checked_pmf(p1, "p1")
    if a0.shape != a1.shape:
        raise ConfigurationError(
            f"pmf lengths differ: p0 has {a0.size} entries, p1 has {a1.size}")
    logs = _common_support_logs(a0, a1)
    if logs is None:
        return math.inf
    return _tilted_value(logs[0], logs[1], lam)


def _golden_max(curve: Callable[[float], float]) -> ChernoffResult:
    """Maximize a concave curve over [0, 1] by golden-section search.

    The bracket shrinks below LAMBDA_ABS_TOL (well inside the iteration
    cap); the best probed point is returned, so the reported value never
    undercuts any probe.  A curve that is flat at zero within
    PLATEAU_TOL reports the midpoint tilt 0.5.
    """
    evals: dict[float, float] = {}

    def probe(x: float) -> float:
        if x not in evals:
            evals[x] = curve(x)
        return evals[x]

    lo, hi = 0.0, 1.0
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    for _ in range(GOLDEN_MAX_ITER):
        if hi - lo < LAMBDA_ABS_TOL:
            break
        if probe(c) >= probe(d):
            hi, d = d, c
            c = hi - _INV_PHI * (hi - lo)
        else:
            lo, c = c, d
            d = lo + _INV_PHI * (hi - lo)
    for x in (0.0, 0.5, 1.0, 0.5 * (lo + hi)):
        probe(x)
    if max(abs(v) for v in evals.values()) < PLATEAU_TOL:
        return ChernoffResult(value=0.0, lambda_star=0.5)
    best_lam = max(evals, key=evals.get)
    return ChernoffResult(value=evals[best_lam], lambda_star=best_lam)


def chernoff_information(p0: object, p1: object) -> ChernoffResult:
    """Best-tilt divergence max over lam in [0, 1] of the tilted divergence.

    Identical pmfs give (0, 0.5); disjoint supports give (inf, 0.5).
    """
    a0 = _checked_pmf(p0, "p0")
    a1 = _checked_pmf(p1, "p1")
    if a0.shape != a1.shape:
        raise ConfigurationError(
            f"pmf lengths differ: p0 has {a0.size} entries, p1 has {a1.size}")
    logs = _common_support_logs(a0, a1)
    if logs is None:
        return ChernoffResult(value=math.inf, lambda_star=0.5)
    lp0, lp1 = logs
    return _golden_max(lambda lam: _tilted_value(lp0, lp1, lam))


def averaged_pairwise_exponent(groups: Sequence[tuple[float, CodewordChannel]],
                               pair: tuple[int, int, int]) -> ChernoffResult:
    """Best single tilt for a group-weighted pairwise divergence.

    groups is a sequence of (weight, CodewordChannel) with weights
    forming a pmf over groups; pair = (s, x1, x2) names the context and
    the two source letters being confused.  All groups share one tilt:
    the value is max over lam of sum_j w_j d_lam(p_j(.|x1,s), p_j(.|x2,s)).
    A positively weighted group whose pair rows have disjoint supports
    makes the whole average infinite.
    """
    entries = list(groups)
    if not entries:
        raise ConfigurationError("groups must contain at least one (weight, channel) pair")
    weights = np.array([float(w) for w, _ in entries])
    if not np.all(np.isfinite(weights)) or float(weights.min()) < 0.0:
        raise ConfigurationError("group weights must be finite and nonnegative")
    if abs(float(weights.sum()) - 1.0) > 1e-9:
        raise ConfigurationError(
            f"group weights sum to {float(weights.sum())!r}, not 1 within 1e-09")
    s, x1, x2 = (int(k) for k in pair)
    if x1 == x2:
        raise ConfigurationError("pair must name two distinct source letters")
    logs: list[tuple[float, np.ndarray, np.ndarray]] = []
    for w, channel in entries:
        rows = channel.rows
        if not (0 <= s < rows.shape[1] and 0 <= x1 < rows.shape[0] and 0 <= x2 < rows.shape[0]):
            raise ConfigurationError(
                f"pair (s={s}, x1={x1}, x2={x2}) is outside the channel's "
                f"(x, s) shape {rows.shape[:2]}")
        if w <= 0.0:
            continue
        pair_logs = _common_support_logs(rows[x1, s], rows[x2, s])
        if pair_logs is None:
            return ChernoffResult(value=math.inf, lambda_star=0.5)
        logs.append((float(w), pair_logs[0], pair_logs[1]))

    def curve(lam: float) -> float:
        return sum(w * _tilted_value(lp0, lp1, lam) for w, lp0, lp1 in logs)

    return _golden_max(curve)
