"""Max-min ratio programs: level test, bisection solver, brute-force check."""

import math

import numpy as np
import pytest

from artifact import ConfigurationError
from artifact.lfp import (
    SUPPORT_ATOL,
    LfpInstance,
    LfpSolution,
    _simplex_grid,
    brute_force_lfp,
    feasibility_lp,
    min_ratio,
    solve_lfp,
)


def _instance(a, b, c1=0.0, c2=1.0):
    return LfpInstance(a=np.array(a, dtype=float), b=np.array(b, dtype=float),
                       c1=c1, c2=c2)


def _random_instance(rng, i_max=None, j_max=None):
    i = i_max if i_max is not None else int(rng.integers(1, 4))
    j = j_max if j_max is not None else int(rng.integers(2, 9))
    return LfpInstance(
        a=rng.uniform(0.1, 10.0, size=(i, j)),
        b=rng.uniform(0.1, 10.0, size=(i, j)),
        c1=float(rng.uniform(0.0, 1.0)),
        c2=float(rng.uniform(0.01, 1.0)),
    )


class TestInstanceValidation:
    def test_rejects_one_dimensional_data(self):
        with pytest.raises(ConfigurationError, match="2-dimensional"):
            LfpInstance(a=np.ones(3), b=np.ones(3), c1=0.0, c2=1.0)

    def test_rejects_mismatched_shapes(self):
        with pytest.raises(ConfigurationError):
            _instance(np.ones((2, 3)), np.ones((2, 4)))

    def test_rejects_empty_matrices(self):
        with pytest.raises(ConfigurationError, match="at least one"):
            _instance(np.ones((0, 3)), np.ones((0, 3)))

    def test_rejects_nonfinite_entries(self):
        with pytest.raises(ConfigurationError, match="finite"):
            _instance([[1.0, math.inf]], [[1.0, 1.0]])

    def test_rejects_zero_entries(self):
        with pytest.raises(ConfigurationError, match="strictly positive"):
            _instance([[1.0, 0.0]], [[1.0, 1.0]])

    def test_rejects_negative_numerator_shift(self):
        with pytest.raises(ConfigurationError, match="c1"):
            _instance([[1.0]], [[1.0]], c1=-0.1)

    def test_rejects_zero_denominator_shift(self):
        with pytest.raises(ConfigurationError, match="c2"):
            _instance([[1.0]], [[1.0]], c2=0.0)

    def test_shape_properties(self):
        inst = _instance(np.ones((2, 5)), np.ones((2, 5)))
        assert inst.i_max == 2
        assert inst.j_max == 5


class TestSolutionValidation:
    def test_rejects_weights_off_the_simplex(self):
        with pytest.raises(ConfigurationError, match="sum"):
            LfpSolution(weights=np.array([0.5, 0.6]), gamma=1.0, support_size=2)

    def test_rejects_wrong_support_count(self):
        with pytest.raises(ConfigurationError, match="support_size"):
            LfpSolution(weights=np.array([1.0, 0.0]), gamma=1.0, support_size=2)


def test_min_ratio_hand_value():
    inst = _instance([[2.0, 4.0], [6.0, 1.0]], [[1.0, 1.0], [2.0, 1.0]], c1=0.5, c2=0.5)
    w = [0.25, 0.75]
    row0 = (2.0 * 0.25 + 4.0 * 0.75 + 0.5) / (1.0 + 0.5)
    row1 = (6.0 * 0.25 + 1.0 * 0.75 + 0.5) / (2.0 * 0.25 + 0.75 + 0.5)
    assert min_ratio(inst, w) == pytest.approx(min(row0, row1), abs=1e-12)


def test_min_ratio_rejects_wrong_length():
    inst = _instance([[1.0, 2.0]], [[1.0, 1.0]])
    with pytest.raises(ConfigurationError, match="shape"):
        min_ratio(inst, [1.0])


class TestFeasibilityLp:
    def test_level_zero_slack_is_the_best_numerator(self):
        inst = _instance([[2.0, 1.0]], [[1.0, 1.0]], c1=0.0, c2=0.5)
        t_star, witness = feasibility_lp(inst, 0.0)
        assert t_star == pytest.approx(2.0, abs=1e-9)
        assert witness == pytest.approx([1.0, 0.0], abs=1e-9)

    def test_level_above_the_bracket_top_is_infeasible(self):
        inst = _instance([[2.0, 1.0]], [[1.0, 1.0]], c1=0.0, c2=0.5)
        t_star, _ = feasibility_lp(inst, 10.0)
        assert t_star < 0.0

    def test_identical_numerator_and_denominator_sit_on_the_level(self):
        inst = _instance([[1.0, 2.0]], [[1.0, 2.0]], c1=0.3, c2=0.3)
        t_star, _ = feasibility_lp(inst, 1.0)
        assert abs(t_star) < 1e-12

    def test_slack_is_decreasing_in_the_level(self):
        rng = np.random.default_rng(3)
        inst = _random_instance(rng)
        levels = np.linspace(0.0, 5.0, 11)
        slacks = [feasibility_lp(inst, g)[0] for g in levels]
        assert all(s1 >= s2 - 1e-9 for s1, s2 in zip(slacks, slacks[1:]))

    def test_rejects_nonfinite_level(self):
        inst = _instance([[1.0]], [[1.0]])
        with pytest.raises(ValueError):
            feasibility_lp(inst, math.inf)
        with pytest.raises(ValueError):
            feasibility_lp(inst, math.nan)


class TestSolveLfp:
    def test_single_row_puts_all_weight_on_the_best_column(self):
        sol = solve_lfp(_instance([[3.0, 5.0]], [[2.0, 2.0]], c1=0.0, c2=1.0))
        assert sol.gamma == pytest.approx(5.0 / 3.0, abs=1e-8)
        assert sol.weights == pytest.approx([0.0, 1.0], abs=1e-7)
        assert sol.support_size == 1

    def test_constant_instance_has_a_flat_objective(self):
        sol = solve_lfp(_instance(np.full((2, 3), 2.0), np.full((2, 3), 1.0),
                                  c1=0.5, c2=0.5))
        assert sol.gamma == pytest.approx(2.5 / 1.5, abs=1e-8)

    def test_two_row_crossing_balances_the_rows(self):
        inst = _instance([[3.0, 1.0], [1.0, 2.0]], [[2.0, 1.0], [1.0, 1.0]],
                         c1=0.0, c2=0.5)
        sol = solve_lfp(inst)
        assert sol.gamma == pytest.approx(1.0, abs=1e-6)
        assert sol.weights == pytest.approx([0.5, 0.5], abs=1e-4)

    def test_reported_level_is_exactly_what_the_weights_achieve(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            inst = _random_instance(rng)
            sol = solve_lfp(inst)
            assert sol.gamma == min_ratio(inst, sol.weights)

    def test_support_never_exceeds_the_row_count(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            inst = _random_instance(rng)
            sol = solve_lfp(inst)
            assert sol.support_size <= inst.i_max
            assert sol.support_size == int((sol.weights > SUPPORT_ATOL).sum())

    def test_no_feasible_level_above_the_reported_one(self):
        rng = np.random.default_rng(29)
        for _ in range(10):
            inst = _random_instance(rng)
            sol = solve_lfp(inst, tol=1e-10)
            t_star, _ = feasibility_lp(inst, sol.gamma + 1e-6)
            assert t_star < 1e-6

    def test_frozen_three_by_five_instance(self):
        rng = np.random.default_rng(23)
        inst = None
        for _ in range(2):
            inst = LfpInstance(
                a=rng.uniform(0.1, 10.0, size=(3, 5)),
                b=rng.uniform(0.1, 10.0, size=(3, 5)),
                c1=float(rng.uniform(0.0, 1.0)),
                c2=float(rng.uniform(0.01, 1.0)),
            )
        sol = solve_lfp(inst)
        assert sol.gamma == pytest.approx(1.6947878801, abs=1e-4)
        assert sol.support_size <= 3

    def test_rejects_bad_tolerance(self):
        inst = _instance([[1.0]], [[1.0]])
        with pytest.raises(ValueError):
            solve_lfp(inst, tol=0.0)
        with pytest.raises(ValueError):
            solve_lfp(inst, tol=-1e-9)


class TestBruteForce:
    def test_agrees_with_the_solver_on_small_instances(self):
        rng = np.random.default_rng(5)
        for _ in range(5):
            inst = LfpInstance(
                a=rng.uniform(0.5, 2.0, size=(2, 3)),
                b=rng.uniform(0.5, 2.0, size=(2, 3)),
                c1=float(rng.uniform(0.0, 1.0)),
                c2=float(rng.uniform(0.5, 1.0)),
            )
            sol = solve_lfp(inst)
            gamma_grid, w_grid = brute_force_lfp(inst, 0.005)
            assert gamma_grid <= sol.gamma + 1e-9
            assert sol.gamma - gamma_grid < 2e-3
            assert min_ratio(inst, w_grid) == pytest.approx(gamma_grid, abs=1e-12)

    def test_grid_step_domain(self):
        inst = _instance([[1.0, 2.0]], [[1.0, 1.0]])
        with pytest.raises(ValueError):
            brute_force_lfp(inst, 0.0)
        with pytest.raises(ValueError):
            brute_force_lfp(inst, 0.6)

    def test_too_many_columns(self):
        inst = _instance(np.ones((1, 7)), np.ones((1, 7)))
        with pytest.raises(ValueError, match="6 columns"):
            brute_force_lfp(inst, 0.5)

    def test_point_cap(self):
        inst = _instance(np.ones((1, 6)), np.ones((1, 6)))
        with pytest.raises(ValueError):
            brute_force_lfp(inst, 0.002)


class TestSimplexGrid:
    def test_counts_and_sums(self):
        grid = _simplex_grid(5, 3)
        assert grid.shape == (21, 3)
        assert np.all(grid.sum(axis=1) == 5)
        assert np.all(grid >= 0)
        assert len({tuple(row) for row in grid}) == grid.shape[0]

    def test_single_part_edge(self):
        grid = _simplex_grid(7, 1)
        assert grid.shape == (1, 1)
        assert grid[0, 0] == 7
