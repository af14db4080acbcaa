"""Tilted divergences, their best-tilt maximization, and group averages."""

import math
import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact import (
    CodewordChannel,
    ConfigurationError,
    averaged_pairwise_exponent,
    chernoff_divergence,
    chernoff_information,
    discretize_normal,
)


def _pmf_pair(draw_ints):
    a = np.array(draw_ints[:4], dtype=float) + 1.0
    b = np.array(draw_ints[4:], dtype=float) + 1.0
    return a / a.sum(), b / b.sum()


pmf_pairs = st.lists(st.integers(min_value=0, max_value=50), min_size=8, max_size=8)


def test_divergence_is_zero_at_both_endpoints_for_full_support():
    p = np.array([0.3, 0.7])
    q = np.array([0.6, 0.4])
    assert chernoff_divergence(p, q, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert chernoff_divergence(p, q, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_divergence_of_mirrored_flip_rows_at_half():
    value = chernoff_divergence([0.9, 0.1], [0.1, 0.9], 0.5)
    assert math.isclose(value, -math.log(0.6), abs_tol=1e-12)


def test_divergence_rejects_tilt_outside_unit_interval():
    with pytest.raises(ValueError):
        chernoff_divergence([0.5, 0.5], [0.4, 0.6], -0.01)
    with pytest.raises(ValueError):
        chernoff_divergence([0.5, 0.5], [0.4, 0.6], 1.01)


def test_divergence_of_disjoint_supports_is_infinite():
    assert chernoff_divergence([1.0, 0.0], [0.0, 1.0], 0.5) == math.inf


def test_one_sided_support_drops_the_vanishing_term():
    # Only the common-support letter contributes, so the curve is
    # -lam * log 0.9 and grows toward the lam = 1 endpoint.
    assert math.isclose(chernoff_divergence([1.0, 0.0], [0.9, 0.1], 1.0),
                        -math.log(0.9), abs_tol=1e-12)
    assert math.isclose(chernoff_divergence([1.0, 0.0], [0.9, 0.1], 0.5),
                        -0.5 * math.log(0.9), abs_tol=1e-12)


@given(pmf_pairs, st.floats(min_value=0.0, max_value=1.0))
def test_divergence_swaps_arguments_by_reflecting_the_tilt(ints, lam):
    p, q = _pmf_pair(ints)
    d1 = chernoff_divergence(p, q, lam)
    d2 = chernoff_divergence(q, p, 1.0 - lam)
    assert math.isclose(d1, d2, rel_tol=1e-12, abs_tol=1e-12)


@given(pmf_pairs, st.floats(min_value=0.01, max_value=0.99),
       st.floats(min_value=0.01, max_value=0.99))
def test_divergence_is_concave_in_the_tilt(ints, lam1, lam2):
    p, q = _pmf_pair(ints)
    mid = 0.5 * (lam1 + lam2)
    lhs = chernoff_divergence(p, q, mid)
    rhs = 0.5 * (chernoff_divergence(p, q, lam1) + chernoff_divergence(p, q, lam2))
    assert lhs >= rhs - 1e-12


@given(pmf_pairs)
def test_divergence_is_nonnegative(ints):
    p, q = _pmf_pair(ints)
    for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
        assert chernoff_divergence(p, q, lam) >= -1e-15


def test_information_of_identical_pmfs_is_zero_at_half():
    res = chernoff_information([0.2, 0.3, 0.5], [0.2, 0.3, 0.5])
    assert res.value == 0.0
    assert res.lambda_star == 0.5


def test_information_of_mirrored_flip_rows():
    res = chernoff_information([0.9, 0.1], [0.1, 0.9])
    assert math.isclose(res.value, -math.log(0.6), abs_tol=1e-10)
    assert math.isclose(res.lambda_star, 0.5, abs_tol=1e-6)


def test_information_of_disjoint_supports():
    res = chernoff_information([1.0, 0.0], [0.0, 1.0])
    assert res.value == math.inf
    assert res.lambda_star == 0.5


def test_information_attained_at_the_boundary_tilt():
    res = chernoff_information([1.0, 0.0], [0.9, 0.1])
    assert math.isclose(res.value, -math.log(0.9), rel_tol=0, abs_tol=1e-9)
    assert res.lambda_star > 1.0 - 1e-6


@given(pmf_pairs)
def test_information_dominates_every_sampled_tilt(ints):
    p, q = _pmf_pair(ints)
    res = chernoff_information(p, q)
    for lam in (0.1, 0.3, 0.5, 0.7, 0.9):
        assert res.value >= chernoff_divergence(p, q, lam) - 1e-10


def test_discretized_shifted_normals_recover_the_continuous_exponent():
    # N(0, 2) against N(1, 2): the continuous best exponent is 1/16 at
    # the symmetric tilt.
    started = time.monotonic()
    p0 = discretize_normal(0.0, 2.0, -12.0, 13.0, 0.001)
    p1 = discretize_normal(1.0, 2.0, -12.0, 13.0, 0.001)
    res = chernoff_information(p0, p1)
    elapsed = time.monotonic() - started
    assert abs(res.value - 0.0625) < 1e-4
    assert abs(res.lambda_star - 0.5) < 1e-3
    assert elapsed < 5.0


def _channel(rows_by_x):
    return CodewordChannel(rows=np.array(rows_by_x)[:, None, :])


def test_single_group_average_equals_plain_information():
    ch = _channel([[0.5, 0.5], [0.9, 0.1]])
    avg = averaged_pairwise_exponent([(1.0, ch)], (0, 0, 1))
    solo = chernoff_information([0.5, 0.5], [0.9, 0.1])
    assert math.isclose(avg.value, solo.value, abs_tol=1e-12)
    assert math.isclose(avg.lambda_star, solo.lambda_star, abs_tol=1e-9)


def test_two_identical_groups_average_to_the_single_group():
    ch = _channel([[0.5, 0.5], [0.9, 0.1]])
    avg = averaged_pairwise_exponent([(0.5, ch), (0.5, ch)], (0, 0, 1))
    solo = chernoff_information([0.5, 0.5], [0.9, 0.1])
    assert math.isclose(avg.value, solo.value, abs_tol=1e-12)


def test_weighted_average_matches_a_dense_tilt_grid():
    ch1 = _channel([[0.5, 0.5], [0.9, 0.1]])
    ch2 = _channel([[0.8, 0.2], [0.2, 0.8]])
    groups = [(0.3, ch1), (0.7, ch2)]
    res = averaged_pairwise_exponent(groups, (0, 0, 1))

    lams = np.arange(0.0, 1.0 + 1e-6, 1e-6)[:, None]
    acc = np.zeros(lams.shape[0])
    for w, ch in groups:
        lp0 = np.log(ch.rows[0, 0])
        lp1 = np.log(ch.rows[1, 0])
        tilted = (1.0 - lams) * lp0[None, :] + lams * lp1[None, :]
        m = tilted.max(axis=1, keepdims=True)
        acc += w * -(m[:, 0] + np.log(np.exp(tilted - m).sum(axis=1)))
    assert res.value >= acc.max() - 1e-12
    assert abs(res.value - acc.max()) < 1e-8


def test_zero_weight_group_cannot_poison_the_average():
    informative = _channel([[0.6, 0.4], [0.3, 0.7]])
    disjoint = _channel([[1.0, 0.0], [0.0, 1.0]])
    res = averaged_pairwise_exponent([(1.0, informative), (0.0, disjoint)], (0, 0, 1))
    assert math.isfinite(res.value)


def test_positively_weighted_disjoint_group_forces_infinity():
    informative = _channel([[0.6, 0.4], [0.3, 0.7]])
    disjoint = _channel([[1.0, 0.0], [0.0, 1.0]])
    res = averaged_pairwise_exponent([(0.5, informative), (0.5, disjoint)], (0, 0, 1))
    assert res.value == math.inf


def test_average_rejects_bad_weights_and_pairs():
    ch = _channel([[0.5, 0.5], [0.9, 0.1]])
    with pytest.raises(ConfigurationError):
        averaged_pairwise_exponent([], (0, 0, 1))
    with pytest.raises(ConfigurationError):
        averaged_pairwise_exponent([(0.7, ch)], (0, 0, 1))
    with pytest.raises(ConfigurationError):
        averaged_pairwise_exponent([(1.0, ch)], (0, 1, 1))
    with pytest.raises(ConfigurationError):
        averaged_pairwise_exponent([(1.0, ch)], (1, 0, 1))
