"""Monte-Carlo check of predicted error exponents for finite sensor pools.

Each trial draws a source/context pair, lets a pool of sensors observe
and quantize it, and fuses the quantized symbols with a context-aware
maximum a posteriori rule.  Trials are driven by a counter-based
generator keyed by (seed, pool size, trial index), so estimates are
reproducible bit for bit regardless of scheduling or thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegenerateModelError
from .exponent import GroupPlan
from .prob import JointSourcePmf, ObservationChannel, induced_codeword_channel

MIN_ERRORS_PER_POINT = 10


@dataclass(frozen=True)
class SimConfig:
    """A reproducible experiment: model, plan, pool sizes, trials, seed."""

    source: JointSourcePmf
    observation: ObservationChannel
    plan: GroupPlan
    l_values: tuple[int, ...]
    trials: int
    seed: int

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.l_values)
        if not values:
            raise ConfigurationError("l_values must be nonempty")
        if values[0] < 1:
            raise ConfigurationError("every pool size must be at least 1")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ConfigurationError("l_values must be strictly increasing")
        if int(self.trials) < 1:
            raise ConfigurationError("trials must be at least 1")
        seed = int(self.seed)
        if not 0 <= seed < 2 ** 64:
            raise ConfigurationError("seed must fit an unsigned 64-bit integer")
        if (self.source.x_size, self.source.s_size) != \
                (self.observation.x_size, self.observation.s_size):
            raise ConfigurationError(
                "source and observation disagree on the (x, s) alphabet")
        for k, ch in enumerate(self.plan.channels):
            if ch.y_size != self.observation.y_size:
                raise ConfigurationError(
                    f"plan group {k} expects {ch.y_size} observation letters, "
                    f"channel emits {self.observation.y_size}")
        object.__setattr__(self, "l_values", values)
        object.__setattr__(self, "trials", int(self.trials))
        object.__setattr__(self, "seed", seed)


@dataclass(frozen=True)
class SimResult:
    """Per-pool error rates and the fitted decay slope of -log p_e."""

    per_l: tuple[tuple[int, int, int, float], ...]
    fitted_slope: float
    slope_stderr: float


def apportion_sensors(weights: object, pool_size: int) -> np.ndarray:
    """Largest-remainder allocation of pool_size sensors to groups.

    Counts sum exactly to pool_size and each sits within one sensor of
    its ideal share pool_size * w_j; remainder ties go to the lower
    group index so the split is deterministic.
    """
    w = np.asarray(weights, dtype=float)
    pool_size = int(pool_size)
    if pool_size < 1:
        raise ValueError(f"pool_size must be at least 1, got {pool_size}")
    ideal = w * pool_size
    counts = ideal.astype(np.int64)  # truncation, i.e. floor for nonnegative shares
    short = pool_size - int(counts.sum())
    if short > 0:
        remainders = ideal - counts
        order = np.lexsort((np.arange(w.size), -remainders))
        counts[order[:short]] += 1
    return counts


def _trial_generator(seed: int, pool_size: int, trial: int) -> np.random.Generator:
    # High counter words separate the streams; the low words leave every
    # stream astronomically more blocks than a trial can consume.
    bit_gen = np.random.Philox(key=seed, counter=[0, 0, trial, pool_size])
    return np.random.Generator(bit_gen)


class _CompiledPlan:
    """Per-config tables shared across trials: log priors and log likelihoods."""

    def __init__(self, config: SimConfig) -> None:
        self.config = config
        self.joint_flat = config.source.probs.reshape(-1)
        self.s_size = config.source.s_size
        self.obs_rows = config.observation.rows
        self.test_rows = [ch.rows for ch in config.plan.channels]
        induced = [induced_codeword_channel(config.observation, ch).rows
                   for ch in config.plan.channels]
        with np.errstate(divide="ignore"):
            self.log_prior = np.log(config.source.probs)
            self.log_induced = [np.log(rows) for rows in induced]

    def trial(self, pool_size: int, rng: np.random.Generator) -> bool:
        # Draw order is part of the determinism contract: joint index,
        # then per group the observation counts, then the quantizer
        # counts for each observed letter in increasing order.
        joint = int(rng.choice(self.joint_flat.size, p=self.joint_flat))
        x, s = divmod(joint, self.s_size)
        counts = apportion_sensors(self.config.plan.weights, pool_size)
        log_post = self.log_prior[:, s].copy()
        for j, n_j in enumerate(counts):
            if n_j == 0:
                continue
            y_counts = rng.multinomial(n_j, self.obs_rows[x, s])
            u_counts = np.zeros(self.test_rows[j].shape[1], dtype=np.int64)
            for y in np.flatnonzero(y_counts):
                u_counts += rng.multinomial(int(y_counts[y]), self.test_rows[j][y])
            seen = np.flatnonzero(u_counts)
            # Impossible symbols contribute -inf and knock a hypothesis out.
            log_post += self.log_induced[j][:, s, seen] @ u_counts[seen]
        return int(np.argmax(log_post)) != x


def run_trial(config: SimConfig, pool_size: int, rng: np.random.Generator) -> bool:
    """One fused-decision trial; True when the fused estimate misses.

    The pool is split across groups by largest-remainder apportionment;
    each sensor's observation and quantized symbol are drawn from the
    model, and the fusion center picks the posterior-maximizing source
    letter given the known context (ties to the smallest letter).
    """
    if int(pool_size) < 1:
        raise ValueError(f"pool_size must be at least 1, got {pool_size}")
    return _CompiledPlan(config).trial(int(pool_size), rng)


def _count_errors(compiled: _CompiledPlan, pool_size: int, n_threads: int) -> int:
    config = compiled.config

    def count_range(bounds: tuple[int, int]) -> int:
        start, stop = bounds
        hits = 0
        for t in range(start, stop):
            rng = _trial_generator(config.seed, pool_size, t)
            if compiled.trial(pool_size, rng):
                hits += 1
        return hits

    if n_threads <= 1:
        return count_range((0, config.trials))
    chunk = -(-config.trials // n_threads)
    bounds = [(start, min(start + chunk, config.trials))
              for start in range(0, config.trials, chunk)]
    with ThreadPoolExecutor(max_workers=n_threads) as pool:
        return sum(pool.map(count_range, bounds))


def _ols_slope(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    xc = xs - xs.mean()
    yc = ys - ys.mean()
    sxx = float(xc @ xc)
    slope = float(xc @ yc) / sxx
    residual = yc - slope * xc
    dof = xs.size - 2
    stderr = math.sqrt(float(residual @ residual) / dof / sxx) if dof > 0 else 0.0
    return slope, stderr


def estimate_exponent(config: SimConfig, n_threads: int = 1) -> SimResult:
    """Estimate the error exponent by regressing -log p_e on pool size.

    Every (pool size, trial) pair owns a private generator stream, so
    the result is identical for any n_threads and any evaluation order.
    Pool sizes with fewer than MIN_ERRORS_PER_POINT errors are too noisy
    to use and are left out of the fit; at least two must survive or
    DegenerateModelError explains what to adjust.
    """
    if int(n_threads) < 1:
        raise ValueError(f"n_threads must be at least 1, got {n_threads}")
    compiled = _CompiledPlan(config)
    rows = []
    for pool_size in config.l_values:
        errors = _count_errors(compiled, pool_size, int(n_threads))
        rows.append((pool_size, errors, config.trials, errors / config.trials))
    usable = [(l, e) for (l, e, _, _) in rows if e >= MIN_ERRORS_PER_POINT]
    if len(usable) < 2:
        raise DegenerateModelError(
            "insufficient error events: fewer than two pool sizes saw at least "
            f"{MIN_ERRORS_PER_POINT} errors; increase trials, shrink the pool "
            "sizes, or pick a noisier scenario")
    xs = np.array([float(l) for l, _ in usable])
    ys = np.array([-math.log(e / config.trials) for _, e in usable])
    slope, stderr = _ols_slope(xs, ys)
    return SimResult(per_l=tuple(rows), fitted_slope=slope, slope_stderr=stderr)
