from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from voronoi_maps.enumerate_oracle import enum_labelled_trees, tree_size
from voronoi_maps.exact_arith import BiSeries, UniSeries
from voronoi_maps.recursions import (
    ConfigurationError, N_from_X, N_table, Z_from_X, closed_R, closed_R_infinity,
    closed_X_diag, recursion_residual_R, recursion_residual_X, solve_R, solve_R_infinity,
    solve_X,
)

K = 10


@pytest.fixture(scope="module")
def rt():
    return solve_R(K + 1, K)


@pytest.fixture(scope="module")
def xt():
    return solve_X(7, 12)


def test_R_zero_convention(rt):
    assert rt[0] == UniSeries.zero(K)
    assert all(rt[s][0] == 1 for s in range(1, K + 2))


def test_R_first_terms(rt):
    assert rt[1].coeffs[:4] == (1, 2, 9, 54)
    assert rt[2].coeffs[:3] == (1, 3, 17)


def test_R_infinity_counts_ternary_trees():
    # 3^n Catalan(n)
    assert solve_R_infinity(5).coeffs == (1, 3, 18, 135, 1134, 10206)


@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_R_counts_labelled_trees(rt, s):
    # [g^n] R_s = trees with n edges, root label s, every label >= 1
    counts = [0] * 7
    for t in enum_labelled_trees(6, s, 1):
        counts[tree_size(t)] += 1
    assert list(rt[s].coeffs[:7]) == counts


def test_R_residual_vanishes(rt):
    assert all(r == UniSeries.zero(K) for r in recursion_residual_R(rt))


def test_R_stabilises(rt):
    assert rt[K + 1] == rt.stabilized == solve_R_infinity(K)
    assert rt[K + 50] == rt.stabilized


@pytest.mark.parametrize("s_max,order", [(5, 5), (3, 10), (0, 0)])
def test_R_rejects_short_tables(s_max, order):
    with pytest.raises(ConfigurationError):
        solve_R(s_max, order)


@pytest.mark.parametrize("s", range(1, 9))
def test_closed_R_matches_recursion(s):
    assert closed_R(s, 20) == solve_R(21, 20)[s]


def test_closed_R_infinity():
    assert closed_R_infinity(20) == solve_R(21, 20).stabilized
    assert closed_R(3, 8)[0] == 1


def test_X_boundary_entries(xt):
    one = BiSeries.one(12)
    assert xt[0, 0] == one and xt[3, 0] == one and xt[0, 4] == one


def test_X_constant_terms_and_first_coefficient(xt):
    assert all(x.constant() == 1 for x in xt.entries.values())
    assert xt[1, 1].coeff(1, 1) == 1


def test_X_residual_vanishes(xt):
    for s in range(1, 7):
        for t in (s - 1, s, s + 1):
            if 1 <= t <= 6:
                assert recursion_residual_X(xt, s, t).is_zero()


def test_X_stabilises_and_is_symmetric(xt):
    assert xt[7, 7] == xt.stabilized
    for s in range(1, 6):
        assert xt[s, s + 1] == xt[s + 1, s].swap()
        assert xt[s, s] == xt[s, s].swap()


def test_X_offset_outside_band():
    with pytest.raises(KeyError):
        solve_X(7, 12)[1, 3]


def test_X_rejects_short_table():
    with pytest.raises(ConfigurationError):
        solve_X(6, 12)


def test_X_coefficients_non_negative(xt):
    for x in xt.entries.values():
        assert all(c >= 0 for c in x.terms().values())


@pytest.mark.parametrize("s,t", [(s, s + d) for s in range(0, 7) for d in (-1, 0, 1) if 0 <= s + d <= 6])
def test_closed_X_diag_matches_recursion(s, t):
    xt = solve_X(15, 28)
    assert xt[s, t].diagonal() == closed_X_diag(s, t, 14)


def test_closed_X_diag_trivial():
    assert closed_X_diag(0, 3, 6) == UniSeries.one(6)
    assert closed_X_diag(2, 2, 6)[0] == 1


def test_N_examples(xt):
    rt = xt.r_table
    n11 = N_from_X(xt[1, 1], rt[1], rt[1])
    assert n11.constant() == 1
    assert n11.coeff(1, 1) == 0
    A = BiSeries.outer(rt[1], rt[1], 12).times_uv()
    assert xt[1, 1] * n11.reciprocal() == 1 + A * xt[1, 1]


def test_N_table_keeps_boundary(xt):
    nt = N_table(xt)
    assert nt[(0, 1)] == BiSeries.one(12)


def test_Z_examples(xt):
    assert Z_from_X(BiSeries.one(6)).is_zero()
    assert Z_from_X(xt[1, 1]).coeff(1, 1) == 1


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=6))
def test_R_monotone_in_s(s, n):
    # more room above the floor means more trees
    rt = solve_R(11, 10)
    assert rt[s][n] <= rt[s + 1][n]


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=1, max_value=5))
def test_R_truncations_agree(s):
    assert solve_R(11, 10)[s] == solve_R(21, 20)[s].truncate(10)
