"""Worst-pair error exponent per unit rate for grouped quantizer plans.

A plan assigns sensors to quantizer groups by a weight pmf.  Its score
is the worst source-pair exponent, averaged over groups at a shared
tilt, divided by the weight-averaged per-sensor rate.  Weights are
optimized by alternating two exact steps: freeze the per-pair tilt at
the current plan's maximizer, then re-solve the resulting max-min ratio
program over the simplex.  Each ratio program is solved at a vertex, so
the optimized support never needs more groups than there are source
pairs times context letters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chernoff import averaged_pairwise_exponent, chernoff_divergence
from .errors import ConfigurationError, DegenerateModelError
from .lfp import LfpInstance, solve_lfp
from .prob import (
    CodewordChannel,
    JointSourcePmf,
    ObservationChannel,
    TestChannel,
    conditional_mutual_information,
    induced_codeword_channel,
)

WEIGHT_ATOL = 1e-9
SUPPORT_ATOL = 1e-7
RATE_FLOOR = 1e-14
# The natural ratio program here has c1 = c2 = 0; a tiny positive c2
# keeps the level test well posed and perturbs the ratio by less than
# 1e-9 for any plan whose average rate is at least 1e-3 nats.
LFP_REGULARIZER = 1e-12
# Clamps for the divergence matrix fed to the ratio program: exact zeros
# and infinities are legal divergences but not legal program data.
_DIV_FLOOR = 1e-18
_DIV_CAP = 1e12


@dataclass(frozen=True)
class GroupPlan:
    """A weight pmf over quantizer groups and the group quantizers."""

    weights: np.ndarray
    channels: tuple[TestChannel, ...]

    def __post_init__(self) -> None:
        channels = tuple(self.channels)
        if not channels:
            raise ConfigurationError("a plan needs at least one group")
        if not all(isinstance(ch, TestChannel) for ch in channels):
            raise ConfigurationError("plan channels must be TestChannel instances")
        w = np.array(self.weights, dtype=float)
        if w.shape != (len(channels),):
            raise ConfigurationError(
                f"plan has {len(channels)} groups but {w.size} weights")
        if not np.all(np.isfinite(w)) or float(w.min()) < 0.0:
            raise ConfigurationError("plan weights must be finite and nonnegative")
        if abs(float(w.sum()) - 1.0) > WEIGHT_ATOL:
            raise ConfigurationError(
                f"plan weights sum to {float(w.sum())!r}, not 1 within {WEIGHT_ATOL}")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "channels", channels)

    @property
    def group_count(self) -> int:
        return len(self.channels)


@dataclass(frozen=True)
class ExponentReport:
    """Score of a plan: worst-pair exponent, average rate, and their ratio."""

    numerator: float
    denominator: float
    ratio: float
    worst_triple: tuple[int, int, int]
    lambda_star: float

    def __post_init__(self) -> None:
        expected = self.numerator / self.denominator
        if math.isinf(expected) or math.isinf(self.ratio):
            consistent = expected == self.ratio
        else:
            consistent = abs(expected - self.ratio) <= 1e-10
        if not consistent:
            raise ConfigurationError(
                f"report ratio {self.ratio!r} does not equal numerator/denominator {expected!r}")
        object.__setattr__(self, "worst_triple", tuple(int(k) for k in self.worst_triple))


def source_triples(x_size: int, s_size: int) -> list[tuple[int, int, int]]:
    """All (s, x1, x2) confusion triples with x1 < x2, in lexicographic order."""
    return [(s, x1, x2)
            for s in range(s_size)
            for x1 in range(x_size)
            for x2 in range(x1 + 1, x_size)]


def group_count_bound(x_size: int, s_size: int) -> int:
    """Groups never needed beyond one per confusion triple."""
    return math.comb(x_size, 2) * s_size


def _check_dictionary(observation: ObservationChannel,
                      channels: Sequence[TestChannel]) -> None:
    for k, ch in enumerate(channels):
        if ch.y_size != observation.y_size:
            raise ConfigurationError(
                f"quantizer {k} expects {ch.y_size} observation letters, "
                f"channel emits {observation.y_size}")


def _score_weights(source: JointSourcePmf,
                   induced: Sequence[CodewordChannel],
                   rates: np.ndarray,
                   weights: np.ndarray) -> ExponentReport:
    denominator = float(np.dot(weights, rates))
    if denominator <= RATE_FLOOR:
        raise DegenerateModelError(
            "degenerate plan: the weighted quantizer rate is zero, so the "
            "exponent per unit rate is undefined")
    groups = list(zip(weights, induced))
    best_triple = None
    best = None
    for triple in source_triples(source.x_size, source.s_size):
        res = averaged_pairwise_exponent(groups, triple)
        # Strict comparison keeps the lexicographically first triple on ties.
        if best is None or res.value < best.value:
            best_triple, best = triple, res
    return ExponentReport(numerator=best.value, denominator=denominator,
                          ratio=best.value / denominator,
                          worst_triple=best_triple, lambda_star=best.lambda_star)


def evaluate_plan(source: JointSourcePmf,
                  observation: ObservationChannel,
                  plan: GroupPlan) -> ExponentReport:
    """Score a plan: worst-pair averaged exponent over weight-averaged rate.

    The numerator minimizes over confusion triples (s, x1, x2) the
    best-shared-tilt averaged divergence of the groups' induced codeword
    rows; the denominator is the plan-weighted per-sensor rate.  A plan
    whose average rate vanishes raises DegenerateModelError.
    """
    _check_dictionary(observation, plan.channels)
    induced = [induced_codeword_channel(observation, ch) for ch in plan.channels]
    rates = np.array([conditional_mutual_information(source, observation, ch)
                      for ch in plan.channels])
    return _score_weights(source, induced, rates, plan.weights)


def _ratio_key(report: ExponentReport) -> float:
    return report.ratio


def optimize_weights(source: JointSourcePmf,
                     observation: ObservationChannel,
                     dictionary: Sequence[TestChannel],
                     max_rounds: int = 50,
                     ratio_tol: float = 1e-8) -> tuple[GroupPlan, ExponentReport]:
    """Optimize group weights over a quantizer dictionary.

    Quantizers with zero rate are excluded up front.  Starting from the
    best single quantizer, the loop alternates between freezing each
    triple's tilt at the current plan's maximizer and re-solving the
    induced max-min ratio program for fresh weights, until the scored
    ratio stops improving by more than ratio_tol or max_rounds passes.
    The best plan seen is restricted to its support (weights above
    SUPPORT_ATOL, renormalized) and rescored; by vertex sparsity that
    support never exceeds group_count_bound(x_size, s_size).
    """
    channels = list(dictionary)
    if not channels:
        raise ConfigurationError("dictionary must contain at least one quantizer")
    _check_dictionary(observation, channels)
    all_rates = [conditional_mutual_information(source, observation, ch)
                 for ch in channels]
    kept = [j for j, rate in enumerate(all_rates) if rate > RATE_FLOOR]
    if not kept:
        raise DegenerateModelError(
            "uninformative dictionary: no quantizer carries positive rate")
    channels = [channels[j] for j in kept]
    rates = np.array([all_rates[j] for j in kept])
    induced = [induced_codeword_channel(observation, ch) for ch in channels]
    triples = source_triples(source.x_size, source.s_size)

    # The symmetric tilt separates two rows iff any tilt does, so a
    # triple nobody separates at tilt 1/2 is dead for every weighting.
    for triple in triples:
        s, x1, x2 = triple
        if all(chernoff_divergence(ind.rows[x1, s], ind.rows[x2, s], 0.5) <= _DIV_FLOOR
               for ind in induced):
            raise DegenerateModelError(
                f"uninformative dictionary: no quantizer separates the source pair "
                f"(x1={x1}, x2={x2}) under context s={s}")

    n = len(channels)
    singles = []
    for j in range(n):
        w = np.zeros(n)
        w[j] = 1.0
        singles.append((w, _score_weights(source, induced, rates, w)))
    best_weights, best_report = max(singles, key=lambda item: _ratio_key(item[1]))

    current = best_weights
    previous_ratio = best_report.ratio
    for _ in range(max_rounds):
        groups = list(zip(current, induced))
        tilts = [averaged_pairwise_exponent(groups, triple).lambda_star
                 for triple in triples]
        div = np.array([[chernoff_divergence(ind.rows[x1, s], ind.rows[x2, s], tilt)
                         for ind in induced]
                        for (s, x1, x2), tilt in zip(triples, tilts)])
        program = LfpInstance(a=np.clip(div, _DIV_FLOOR, _DIV_CAP),
                              b=np.tile(rates, (len(triples), 1)),
                              c1=0.0, c2=LFP_REGULARIZER)
        refreshed = solve_lfp(program, tol=1e-10).weights
        report = _score_weights(source, induced, rates, refreshed)
        if _ratio_key(report) > _ratio_key(best_report):
            best_weights, best_report = refreshed, report
        converged = abs(report.ratio - previous_ratio) < ratio_tol
        current = refreshed
        previous_ratio = report.ratio
        if converged:
            break

    support = np.flatnonzero(best_weights > SUPPORT_ATOL)
    final_weights = best_weights[support] / float(best_weights[support].sum())
    plan = GroupPlan(weights=final_weights,
                     channels=tuple(channels[j] for j in support))
    report = _score_weights(source,
                            [induced[j] for j in support],
                            rates[support], plan.weights)
    return plan, report


def soften_channel(test: TestChannel, tau: float) -> TestChannel:
    """Mix a quantizer toward its column-average response.

    tau = 1 returns the quantizer unchanged; as tau drops toward 0 the
    rows approach a common pmf, so the rate vanishes while every row
    keeps its support.  tau outside (0, 1] raises ValueError.
    """
    tau = float(tau)
    if not 0.0 < tau <= 1.0:
        raise ValueError(f"tau must lie in (0, 1], got {tau!r}")
    kappa = test.rows.mean(axis=0)
    rows = (1.0 - tau) * kappa[None, :] + tau * test.rows
    return TestChannel(u_size=test.u_size, rows=rows)


def _checked_taus(taus: Sequence[float]) -> list[float]:
    seq = [float(t) for t in taus]
    if not seq:
        raise ValueError("tau sequence must be nonempty")
    for t in seq:
        if not 0.0 < t <= 1.0:
            raise ValueError(f"tau must lie in (0, 1], got {t!r}")
    if any(later >= earlier for earlier, later in zip(seq, seq[1:])):
        raise ValueError("tau sequence must be strictly decreasing")
    return seq


def vanishing_rate_records(source: JointSourcePmf,
                           observation: ObservationChannel,
                           dictionary: Sequence[TestChannel],
                           taus: Sequence[float],
                           ) -> list[tuple[float, GroupPlan, ExponentReport]]:
    """Re-optimize weights over a tau-softened dictionary for each tau.

    taus must be strictly decreasing within (0, 1]; tau = 1 reproduces
    optimize_weights on the raw dictionary exactly.
    """
    out = []
    for tau in _checked_taus(taus):
        softened = [soften_channel(ch, tau) for ch in dictionary]
        plan, report = optimize_weights(source, observation, softened)
        out.append((tau, plan, report))
    return out


def vanishing_rate_limit(source: JointSourcePmf,
                         observation: ObservationChannel,
                         dictionary: Sequence[TestChannel],
                         taus: Sequence[float]) -> list[tuple[float, float]]:
    """The (tau, exponent per rate) trace of the softening path.

    Softening scales exponent and rate down together, so the trace
    exposes the vanishing-rate limit of the plan family for
    extrapolation as tau decreases.
    """
    return [(tau, report.ratio)
            for tau, _, report in vanishing_rate_records(source, observation,
                                                         dictionary, taus)]
