import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import grid_sum_norm, lp_associate_l1, wlp, wlp_rows

from latticelab import (
    Associate,
    FiniteMeasureSpace,
    Intersection,
    PreconditionViolation,
    Sum,
    WeightedLp,
    associate_norm,
    norm_eval,
    support,
)
from latticelab.io import norm_from_record, norm_to_record
from latticelab.lattice import lolu_condition_check, second_associate_check

P_VALUES = [1.0, 1.5, 2.0, 3.0, np.inf]


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


# --- norm evaluation -------------------------------------------------------


def test_euclidean(unit2):
    assert norm_eval(WeightedLp(unit2, 2), [3, 4]) == pytest.approx(5.0, rel=1e-15)


def test_weighted_formula_against_direct_sum(rng):
    n = 7
    mu, w = rng.uniform(0.2, 3, n), rng.uniform(0.2, 3, n)
    S = FiniteMeasureSpace(mu)
    f = rng.normal(size=n) + 1j * rng.normal(size=n)
    for p in P_VALUES:
        assert WeightedLp(S, p, w)(f) == pytest.approx(wlp(f, p, w, mu), rel=1e-13)


def test_off_mask_is_infinite():
    S = FiniteMeasureSpace.uniform(3)
    X = WeightedLp(S, 2, mask=[0, 1])
    assert X([1, 1, 0]) == pytest.approx(np.sqrt(2))
    assert X([1, 1, 1e-300]) == np.inf


def test_intersection_of_equal_norms(rng):
    S = FiniteMeasureSpace(rng.uniform(0.5, 2, 5))
    X = WeightedLp(S, 3, rng.uniform(0.5, 2, 5))
    f = rng.normal(size=5)
    assert Intersection(X, X)(f) == X(f)


def test_sum_l1_linf_frozen(unit2):
    # grid search over pointwise splits gives 2 (tests/oracles.grid_sum_norm)
    X = Sum(WeightedLp(unit2, 1), WeightedLp(unit2, np.inf))
    assert X([2, 2]) == pytest.approx(2.0, rel=1e-7)


def test_sum_oracle_derivation():
    value = grid_sum_norm([2, 2], lambda v: wlp_rows(v, 1), lambda v: wlp_rows(v, np.inf))
    assert value == pytest.approx(2.0, abs=1e-12)


def test_sum_random_against_grid(rng):
    S = FiniteMeasureSpace(rng.uniform(0.5, 2, 2))
    w0, w1 = rng.uniform(0.5, 2, 2), rng.uniform(0.5, 2, 2)
    X0, X1 = WeightedLp(S, 2, w0), WeightedLp(S, 1, w1)
    f = rng.uniform(0.5, 2, 2)
    grid = grid_sum_norm(f, lambda v: wlp_rows(v, 2, w0, S.mu), lambda v: wlp_rows(v, 1, w1, S.mu), steps=2001)
    # the grid can only overestimate the infimum
    assert Sum(X0, X1)(f) <= grid + 1e-9
    assert Sum(X0, X1)(f) == pytest.approx(grid, rel=1e-4)


def test_sum_is_phase_blind(rng):
    S = FiniteMeasureSpace.uniform(4)
    X = Sum(WeightedLp(S, 2), WeightedLp(S, 1.5))
    f = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert X(f) == pytest.approx(X(np.abs(f)), rel=1e-12)


def test_zero_vector(unit2):
    for X in (WeightedLp(unit2, 3), Sum(WeightedLp(unit2, 1), WeightedLp(unit2, 2))):
        assert X([0, 0]) == 0.0


# --- supports ---------------------------------------------------------------


def test_supports():
    S = FiniteMeasureSpace.uniform(3)
    a, b = WeightedLp(S, 2, mask=[0, 1]), WeightedLp(S, 1, mask=[1, 2])
    assert support(WeightedLp(S, 2)) == {0, 1, 2}
    assert support(Intersection(a, b)) == {1}
    assert support(Sum(a, b)) == {0, 1, 2}
    assert support(Associate(a)) == {0, 1}


def test_sum_mask_union_is_attained():
    # f = (1, 1, 1) is split across the two masks; brute force finds 3
    S = FiniteMeasureSpace.uniform(3)
    a, b = WeightedLp(S, 1, mask=[0, 1]), WeightedLp(S, 1, mask=[1, 2])
    assert Sum(a, b)([1, 1, 1]) == pytest.approx(3.0, rel=1e-8)


# --- associate norms ----------------------------------------------------------


def test_associate_l2_self_dual(unit2):
    X = WeightedLp(unit2, 2)
    for method in ("closed", "solver"):
        assert associate_norm(X, [3, 4], method=method) == pytest.approx(5.0, rel=1e-8)


def test_associate_weighted_l1(unit2):
    # closed form: l^inf(1/w) gives max(2/1, 6/2) = 3; LP over the ball agrees
    X = WeightedLp(unit2, 1, [1, 2])
    assert lp_associate_l1([2, 6], [1, 2], [1, 1]) == pytest.approx(3.0, abs=1e-9)
    assert associate_norm(X, [2, 6], method="closed") == pytest.approx(3.0, rel=1e-15)
    assert associate_norm(X, [2, 6], method="solver") == pytest.approx(3.0, rel=1e-8)


def test_associate_l3_is_l3_2(rng):
    S = FiniteMeasureSpace.uniform(5)
    X = WeightedLp(S, 3)
    f = rng.normal(size=5) + 1j * rng.normal(size=5)
    expected = wlp(f, 1.5)
    assert associate_norm(X, f, method="closed") == pytest.approx(expected, rel=1e-12)
    assert associate_norm(X, f, method="solver") == pytest.approx(expected, rel=1e-6)


def test_associate_l1_weighted_random_against_lp(rng):
    n = 6
    mu, w = rng.uniform(0.2, 3, n), rng.uniform(0.2, 3, n)
    X = WeightedLp(FiniteMeasureSpace(mu), 1, w)
    f = rng.normal(size=n)
    assert associate_norm(X, f, method="solver") == pytest.approx(lp_associate_l1(f, w, mu), rel=1e-7)


def test_associate_off_mask_and_zero():
    S = FiniteMeasureSpace.uniform(3)
    X = WeightedLp(S, 2, mask=[0, 2])
    assert associate_norm(X, [0, 1, 0]) == np.inf
    assert associate_norm(X, [0, 0, 0]) == 0.0


def test_associate_closed_requires_weighted_lp(unit2):
    with pytest.raises(ValueError):
        associate_norm(Sum(WeightedLp(unit2, 1), WeightedLp(unit2, 2)), [1, 1], method="closed")


def test_associate_of_sum_and_intersection(rng):
    # (X0 n X1)' = X0' + X1' and (X0 + X1)' = X0' n X1'
    S = FiniteMeasureSpace(rng.uniform(0.5, 2, 4))
    X0, X1 = WeightedLp(S, 1.5, rng.uniform(0.5, 2, 4)), WeightedLp(S, np.inf, rng.uniform(0.5, 2, 4))
    f = rng.normal(size=4)
    a = associate_norm(Intersection(X0, X1), f)
    b = Sum(Associate(X0), Associate(X1))(f)
    assert rel(a, b) < 1e-6
    c = associate_norm(Sum(X0, X1), f)
    d = Intersection(Associate(X0), Associate(X1))(f)
    assert rel(c, d) < 1e-6


# --- second associate, monotone chains -----------------------------------------


def test_second_associate_l1(unit2):
    nx, nxx, eq = second_associate_check(WeightedLp(unit2, 1), [1, 1])
    assert nx == 2.0 and nxx == pytest.approx(2.0, rel=1e-8) and eq


@pytest.mark.parametrize("p", P_VALUES)
def test_second_associate_random(p, rng):
    n = 5
    S = FiniteMeasureSpace(rng.uniform(0.5, 2, n))
    X = WeightedLp(S, p, rng.uniform(0.5, 2, n))
    nx, nxx, eq = second_associate_check(X, rng.normal(size=n))
    assert eq and rel(nx, nxx) < 1e-5


def test_second_associate_off_mask():
    S = FiniteMeasureSpace.uniform(3)
    nx, nxx, eq = second_associate_check(WeightedLp(S, 2, mask=[0, 1]), [0, 0, 1])
    assert nx == np.inf and nxx == np.inf and eq


def test_lolu_scaled_chain(unit2):
    f = np.array([1.0, 1.0])
    chain = [(1 - 1 / k) * f for k in range(1, 30)]
    assert lolu_condition_check(WeightedLp(unit2, 1), f, chain)


def test_lolu_rejects_decreasing_chain(unit2):
    with pytest.raises(PreconditionViolation) as info:
        lolu_condition_check(WeightedLp(unit2, 1), [1, 1], [[0.5, 0.5], [0.4, 0.6]])
    assert info.value.witness == (1, 0)


def test_lolu_rejects_undominated(unit2):
    with pytest.raises(PreconditionViolation):
        lolu_condition_check(WeightedLp(unit2, 1), [1, 1], [[0.5, 2.0]])


def test_lolu_truncation_chain_linf():
    S = FiniteMeasureSpace.uniform(8)
    f = np.zeros(8)
    f[0] = 1.0
    chain = [np.where(np.arange(8) < k, f, 0.0) for k in range(9)]
    assert lolu_condition_check(WeightedLp(S, np.inf), f, chain)


# --- validation ---------------------------------------------------------------


def test_p_below_one_rejected(unit2):
    with pytest.raises(ValueError, match="p < 1"):
        WeightedLp(unit2, 0.5)


def test_dimension_mismatch(unit2):
    with pytest.raises(ValueError, match="dimension"):
        WeightedLp(unit2, 2)([1, 2, 3])


def test_measure_weights_positive():
    with pytest.raises(ValueError):
        FiniteMeasureSpace([1.0, 0.0])


def test_restriction_must_shrink_mask():
    from latticelab import Restricted

    S = FiniteMeasureSpace.uniform(3)
    with pytest.raises(PreconditionViolation):
        Restricted(WeightedLp(S, 2, mask=[0, 1]), [1, 2])


def test_norm_record_roundtrip():
    rec = {"mu": [1.0, 2.0, 0.5], "w": [1.0, 1.0, 3.0], "p": "inf", "mask": [0, 2]}
    X = norm_from_record(json.loads(json.dumps(rec)))
    assert X.p == np.inf and support(X) == {0, 2}
    assert norm_to_record(X) == rec


# --- properties ---------------------------------------------------------------

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


@st.composite
def norm_and_vectors(draw, n_max=6):
    n = draw(st.integers(1, n_max))
    mu = draw(st.lists(st.floats(0.1, 5), min_size=n, max_size=n))
    w = draw(st.lists(st.floats(0.1, 5), min_size=n, max_size=n))
    p = draw(st.sampled_from(P_VALUES))
    f = np.array(draw(st.lists(finite, min_size=n, max_size=n)))
    g = np.array(draw(st.lists(finite, min_size=n, max_size=n)))
    return WeightedLp(FiniteMeasureSpace(mu), p, w), f, g


@given(norm_and_vectors(), st.lists(st.floats(0, 1), min_size=6, max_size=6))
def test_monotone(data, shrink):
    X, f, _ = data
    g = f * np.array(shrink[: X.n])
    assert X(g) <= X(f) * (1 + 1e-12)


@given(norm_and_vectors())
def test_holder(data):
    X, f, g = data
    lhs = float(np.sum(np.abs(f * g) * X.space.mu))
    slack = associate_norm(X, f) * X(g) - lhs
    assert slack >= -1e-9 * max(1.0, lhs)


@given(norm_and_vectors(n_max=4))
def test_norming_identity(data):
    # ||g||_X equals the sup of the pairing over the associate ball
    X, _, g = data
    if not np.any(g):
        return
    assert rel(X(g), associate_norm(Associate(X), g, method="solver")) < 1e-5


@given(norm_and_vectors(n_max=4))
def test_triangle_and_homogeneity(data):
    X, f, g = data
    assert X(f + g) <= X(f) + X(g) + 1e-9 * (1 + X(f) + X(g))
    assert X(-2.5j * f) == pytest.approx(2.5 * X(f), rel=1e-12)
