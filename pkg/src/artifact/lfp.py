"""Max-min linear-fractional weight allocation over the simplex.

The program is max over weights w on the simplex of
min_i (a_i . w + c1) / (b_i . w + c2) with positive data.  It is solved
by bisecting on the ratio level gamma and testing each level with a
small linear program: the level is achievable iff
t*(gamma) = max_w min_i (a_i . w - gamma b_i . w + c1 - gamma c2) is
nonnegative.  Because every levels test is solved at a vertex, the
returned weights never need more nonzero entries than there are rows in
the ratio matrix; a brute-force simplex grid evaluator provides an
independent cross-check for small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .simplex import solve_lp

SUPPORT_ATOL = 1e-7
_BRUTE_FORCE_J_MAX = 6
_BRUTE_FORCE_POINT_CAP = 20_000_000


@dataclass(frozen=True)
class LfpInstance:
    """Data of one max-min ratio program.

    a and b are (i_max, j_max) matrices with strictly positive entries;
    c1 >= 0 and c2 > 0 shift numerator and denominator.  Positivity
    keeps every ratio finite and the level test monotone in gamma.
    """

    a: np.ndarray
    b: np.ndarray
    c1: float
    c2: float

    def __post_init__(self) -> None:
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.ndim != 2 or b.ndim != 2:
            raise ConfigurationError("a and b must be 2-dimensional matrices")
        if a.shape != b.shape:
            raise ConfigurationError(
                f"a and b shapes differ: {a.shape} versus {b.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise ConfigurationError("a and b need at least one row and one column")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ConfigurationError("a and b entries must be finite")
        if float(a.min()) <= 0.0 or float(b.min()) <= 0.0:
            raise ConfigurationError("a and b entries must be strictly positive")
        c1 = float(self.c1)
        c2 = float(self.c2)
        if not (math.isfinite(c1) and c1 >= 0.0):
            raise ConfigurationError(f"c1 must be finite and nonnegative, got {c1!r}")
        if not (math.isfinite(c2) and c2 > 0.0):
            raise ConfigurationError(f"c2 must be finite and strictly positive, got {c2!r}")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def i_max(self) -> int:
        return int(self.a.shape[0])

    @property
    def j_max(self) -> int:
        return int(self.a.shape[1])


@dataclass(frozen=True)
class LfpSolution:
    """Optimal weights, the achieved min ratio, and the support size."""

    weights: np.ndarray
    gamma: float
    support_size: int

    def __post_init__(self) -> None:
        w = np.array(self.weights, dtype=float)
        if w.ndim != 1:
            raise ConfigurationError("solution weights must be 1-dimensional")
        if abs(float(w.sum()) - 1.0) > 1e-9:
            raise ConfigurationError(
                f"solution weights sum to {float(w.sum())!r}, not 1 within 1e-09")
        if int(self.support_size) != int((w > SUPPORT_ATOL).sum()):
            raise ConfigurationError("support_size does not match the weights")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)


def min_ratio(instance: LfpInstance, weights: object) -> float:
    """The objective min_i (a_i . w + c1) / (b_i . w + c2) at given weights."""
    w = np.asarray(weights, dtype=float)
    if w.shape != (instance.j_max,):
        raise ConfigurationError(
            f"weights shape {w.shape} does not match j_max {instance.j_max}")
    num = instance.a @ w + instance.c1
    den = instance.b @ w + instance.c2
    return float((num / den).min())


def feasibility_lp(instance: LfpInstance, gamma: float) -> tuple[float, np.ndarray]:
    """Level test at gamma: the slack t* and a witness weight vector.

    t* = max_w min_i ((a_i - gamma b_i) . w + c1 - gamma c2) over the
    simplex; gamma is achievable iff t* >= 0.  The witness is the w part
    of an optimal vertex, so when t* >= 0 it carries at most i_max
    nonzero entries.
    """
    gamma = float(gamma)
    if not math.isfinite(gamma):
        raise ValueError(f"gamma must be finite, got {gamma!r}")
    i_max, j_max = instance.i_max, instance.j_max
    d = instance.a - gamma * instance.b
    shift = instance.c1 - gamma * instance.c2
    # t is free, but t* >= min(min_ij d_ij, 0) + shift =: base because the
    # simplex average of any d row sits above the smallest entry.  The
    # substitution t = base + u with u >= 0 therefore loses nothing, and
    # it keeps every right-hand side nonnegative and the feasible set
    # bounded, which a split t = t+ - t- would not (t+ = t- -> infinity
    # rides a constant-objective ray that bisection can stumble onto at
    # the exact optimum).
    # Far above the achievable level, d entries grow like gamma (the
    # bisection bracket starts at (max a + c1)/c2, which is astronomical
    # for small c2).  Dividing d and the constant through by their scale
    # keeps the tableau near unit size without moving the witness; the
    # optimal value just scales back up.
    scale = max(1.0, float(np.abs(d).max()))
    d = d / scale
    shift_scaled = shift / scale
    base = min(float(d.min()), 0.0) + shift_scaled
    rhs = shift_scaled - base
    # Variables [w, u]; maximize u subject to u - d_i . w <= rhs per row
    # and w on the simplex.
    objective = np.concatenate([np.zeros(j_max), [1.0]])
    a_ub = np.hstack([-d, np.ones((i_max, 1))])
    b_ub = np.full(i_max, rhs)
    a_eq = np.concatenate([np.ones(j_max), [0.0]])[None, :]
    b_eq = np.ones(1)
    x, value = solve_lp(objective, a_ub=a_ub, b_ub=b_ub, a_eq=a_eq, b_eq=b_eq)
    witness = np.clip(x[:j_max], 0.0, None)
    return (float(value) + base) * scale, witness


def solve_lfp(instance: LfpInstance, tol: float = 1e-9) -> LfpSolution:
    """Bisection on the achievable ratio level, witness from the last pass.

    The bracket starts at [0, (max a + c1) / c2], which always contains
    the optimum, and shrinks until its width drops below tol.  The
    reported gamma is the min ratio actually achieved by the witness, so
    it is achievable exactly and sits within tol of the optimum.
    """
    tol = float(tol)
    if not (math.isfinite(tol) and tol > 0.0):
        raise ValueError(f"tol must be a positive real, got {tol!r}")
    lo = 0.0
    hi = (float(instance.a.max()) + instance.c1) / instance.c2
    t_lo, witness = feasibility_lp(instance, lo)
    if t_lo < 0.0:
        raise RuntimeError(
            "internal invariant violation: level 0 must be achievable for positive data")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        t_mid, w_mid = feasibility_lp(instance, mid)
        if t_mid >= 0.0:
            lo, witness = mid, w_mid
        else:
            hi = mid
    weights = witness / float(witness.sum())
    support = int((weights > SUPPORT_ATOL).sum())
    if support > instance.i_max:
        # Only an exact hit on the optimal level can blur the vertex
        # sparsity; step strictly inside the achievable region instead.
        _, witness = feasibility_lp(instance, max(0.0, lo * (1.0 - 1e-9) - 1e-15))
        weights = witness / float(witness.sum())
        support = int((weights > SUPPORT_ATOL).sum())
    if support > instance.i_max:
        raise RuntimeError(
            "internal invariant violation: witness support exceeds the row count")
    return LfpSolution(weights=weights, gamma=min_ratio(instance, weights),
                       support_size=support)


def _simplex_grid(units: int, parts: int) -> np.ndarray:
    """All length-`parts` nonnegative integer vectors summing to `units`.

    Built bottom-up, one coordinate at a time, so each partial block is
    assembled exactly once.
    """
    if parts == 1:
        return np.array([[units]], dtype=np.int64)

    def extend(blocks: list[np.ndarray], u: int) -> np.ndarray:
        return np.vstack([
            np.hstack([np.full((blocks[u - head].shape[0], 1), head, dtype=np.int64),
                       blocks[u - head]])
            for head in range(u + 1)
        ])

    per_total = [np.array([[u]], dtype=np.int64) for u in range(units + 1)]
    for _ in range(parts - 2):
        per_total = [extend(per_total, u) for u in range(units + 1)]
    # only the target total is needed at full width, so the last step
    # skips the other totals (they would dwarf the result)
    return extend(per_total, units)


def brute_force_lfp(instance: LfpInstance, grid_step: float) -> tuple[float, np.ndarray]:
    """Exhaustive evaluation of the min-ratio objective on a simplex grid.

    Returns (gamma, weights) at the best grid point; the step is rounded
    to the nearest 1/N.  This is the independent cross-check for
    solve_lfp, so it stays deliberately dumb and is guarded against
    combinatorial blow-up rather than made clever.
    """
    grid_step = float(grid_step)
    if not (0.0 < grid_step <= 0.5):
        raise ValueError(
            f"grid_step must lie in (0, 0.5] so the grid stays meaningful, got {grid_step!r}")
    if instance.j_max > _BRUTE_FORCE_J_MAX:
        raise ValueError(
            f"brute force is limited to {_BRUTE_FORCE_J_MAX} columns "
            f"(got {instance.j_max}); the grid would be astronomically large")
    units = max(1, round(1.0 / grid_step))
    points = math.comb(units + instance.j_max - 1, instance.j_max - 1)
    if points > _BRUTE_FORCE_POINT_CAP:
        raise ValueError(
            f"grid_step {grid_step!r} would enumerate {points} simplex points; "
            "choose a coarser step")
    grid = _simplex_grid(units, instance.j_max).astype(float) / units
    num = grid @ instance.a.T + instance.c1
    den = grid @ instance.b.T + instance.c2
    ratios = (num / den).min(axis=1)
    best = int(ratios.argmax())
    return float(ratios[best]), grid[best]
