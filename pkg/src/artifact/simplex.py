"""Dense two-phase simplex method for small linear programs.

Solves max c.x subject to a_ub x <= b_ub, a_eq x = b_eq, x >= 0 on a
dense tableau.  Entering and leaving variables follow Bland's
smallest-index rules, so degenerate tableaus cannot cycle; that costs a
few extra pivots but these programs have at most a few dozen columns.
"""

from __future__ import annotations

import numpy as np

_TOL = 1e-9
_PIVOT_TOL = 1e-10
_MAX_PIVOTS = 50_000


class InfeasibleProgramError(RuntimeError):
    """The constraint set is empty."""


class UnboundedProgramError(RuntimeError):
    """The objective is unbounded over the constraint set."""


def _pivot(tableau: np.ndarray, obj: np.ndarray, basis: np.ndarray,
           row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    for i in range(tableau.shape[0]):
        if i != row and tableau[i, col] != 0.0:
            tableau[i] -= tableau[i, col] * tableau[row]
    obj -= obj[col] * tableau[row]
    basis[row] = col


def _entering(obj: np.ndarray, allowed: np.ndarray) -> int | None:
    # Bland: the lowest-index improving column.
    for j in range(obj.size - 1):
        if allowed[j] and obj[j] < -_TOL:
            return j
    return None


def _leaving(tableau: np.ndarray, basis: np.ndarray, col: int) -> int | None:
    rows = tableau.shape[0]
    best = -1
    best_ratio = np.inf
    for i in range(rows):
        coef = tableau[i, col]
        if coef > _PIVOT_TOL:
            ratio = tableau[i, -1] / coef
            if ratio < best_ratio - 1e-12:
                best, best_ratio = i, ratio
            elif best >= 0 and abs(ratio - best_ratio) <= 1e-12 and basis[i] < basis[best]:
                # Bland tie-break: smallest basic variable index leaves.
                best = i
    return best if best >= 0 else None


def _run(tableau: np.ndarray, obj: np.ndarray, basis: np.ndarray,
         allowed: np.ndarray) -> None:
    for _ in range(_MAX_PIVOTS):
        col = _entering(obj, allowed)
        if col is None:
            return
        row = _leaving(tableau, basis, col)
        if row is None:
            raise UnboundedProgramError(f"column {col} has no blocking row")
        _pivot(tableau, obj, basis, row, col)
    raise RuntimeError("simplex did not terminate within the pivot cap")


def _reduced_row(tableau: np.ndarray, basis: np.ndarray, costs: np.ndarray) -> np.ndarray:
    # z-row: costs of the basis times the tableau minus the raw costs.
    full = np.append(costs, 0.0)
    return tableau.T @ costs[basis] - full


def solve_lp(objective: object,
             a_ub: object = None, b_ub: object = None,
             a_eq: object = None, b_eq: object = None) -> tuple[np.ndarray, float]:
    """Maximize objective @ x over the given constraints with x >= 0.

    Returns (x, value) at an optimal basic feasible solution, i.e. a
    vertex of the feasible polyhedron.  Raises InfeasibleProgramError or
    UnboundedProgramError when the program has no such point.
    """
    c = np.atleast_1d(np.asarray(objective, dtype=float))
    n = c.size
    if a_ub is None:
        a_ub = np.zeros((0, n))
        b_ub = np.zeros(0)
    if a_eq is None:
        a_eq = np.zeros((0, n))
        b_eq = np.zeros(0)
    a_ub = np.atleast_2d(np.asarray(a_ub, dtype=float))
    a_eq = np.atleast_2d(np.asarray(a_eq, dtype=float))
    b_ub = np.atleast_1d(np.asarray(b_ub, dtype=float))
    b_eq = np.atleast_1d(np.asarray(b_eq, dtype=float))
    m_ub, m_eq = a_ub.shape[0], a_eq.shape[0]
    rows = m_ub + m_eq

    body = np.zeros((rows, n + m_ub))
    body[:m_ub, :n] = a_ub
    body[:m_ub, n:n + m_ub] = np.eye(m_ub)
    body[m_ub:, :n] = a_eq
    rhs = np.concatenate([b_ub, b_eq])
    flip = rhs < 0.0
    body[flip] *= -1.0
    rhs = np.where(flip, -rhs, rhs)

    # A slack column survives as the starting basis only in unflipped
    # inequality rows; every other row gets an artificial variable.
    needs_art = [i for i in range(rows) if i >= m_ub or flip[i]]
    art = np.zeros((rows, len(needs_art)))
    for k, i in enumerate(needs_art):
        art[i, k] = 1.0
    total = n + m_ub + len(needs_art)
    tableau = np.hstack([body, art, rhs[:, None]])
    basis = np.empty(rows, dtype=int)
    next_art = n + m_ub
    for i in range(rows):
        if i < m_ub and not flip[i]:
            basis[i] = n + i
        else:
            basis[i] = next_art
            next_art += 1

    art_mask = np.zeros(total, dtype=bool)
    art_mask[n + m_ub:] = True

    if art_mask.any():
        phase1 = np.where(art_mask, -1.0, 0.0)
        obj = _reduced_row(tableau, basis, phase1)
        _run(tableau, obj, basis, np.ones(total, dtype=bool))
        if obj[-1] < -1e-7:
            raise InfeasibleProgramError(
                f"constraints cannot be met (residual {-obj[-1]:.3e})")
        # Drive leftover artificials out of the basis, dropping any row
        # that turns out to be redundant.
        keep = np.ones(rows, dtype=bool)
        for i in range(rows):
            if art_mask[basis[i]]:
                swap = next((j for j in range(n + m_ub)
                             if abs(tableau[i, j]) > _PIVOT_TOL), None)
                if swap is None:
                    keep[i] = False
                else:
                    _pivot(tableau, obj, basis, i, swap)
        tableau = tableau[keep]
        basis = basis[keep]

    phase2 = np.concatenate([c, np.zeros(total - n)])
    obj = _reduced_row(tableau, basis, phase2)
    _run(tableau, obj, basis, ~art_mask)

    x = np.zeros(total)
    x[basis] = tableau[:, -1]
    solution = x[:n]
    return solution, float(c @ solution)
