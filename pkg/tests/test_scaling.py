import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from voronoi_maps.scaling import (
    DEFAULT_GRID_AB, DEFAULT_GRID_ST, K_constant_numeric, K_expansion_constant, K_fn,
    ScalingDomainError, coefficient_tables, contour_limit_zero, contour_value, d2x_dSdT,
    equal_tables, first_integral_check, first_integral_equal_closed, local_bridge,
    logscal_equal, pde_grid, pde_residual, primitive_residual, r_fn, singularity_coefficient,
    x_b_to_a, x_fn, x_fn_equal,
)

pos = st.floats(min_value=0.1, max_value=4.0)
ab = st.floats(min_value=0.5, max_value=2.0)


def test_r_small_S():
    a, S = 1.0, 0.05
    approx = -4 / S ** 2 - a ** 4 * S ** 2 / 60 + a ** 6 * S ** 4 / 1512
    assert r_fn(S, a) == pytest.approx(approx, rel=1e-12)


def test_r_large_S():
    assert r_fn(60.0, 1.3) == pytest.approx(-1.3 ** 2 / 3, rel=1e-12)


def test_r_domain():
    with pytest.raises(ScalingDomainError):
        r_fn(0.0, 1.0)


@settings(max_examples=40)
@given(pos, ab)
def test_r_scaling_relation(S, a):
    assert r_fn(S, a) == pytest.approx(a * a * r_fn(a * S, 1.0), rel=1e-10)


def test_x_at_origin_of_sigma_tau():
    a, b = 1.0, 1.3
    # sigma, tau -> 0 at large S, T
    assert x_fn(40.0, 40.0, a, b) == pytest.approx(-3 * math.sqrt((a * a + b * b) / 2), rel=1e-12)


@pytest.mark.parametrize("a,b", [(1.0, 1.3), (0.7, 1.0)])
def test_x_small_ST(a, b):
    S, T = 1e-3, 2e-3
    ref = -6 * (S * S + S * T + T * T) / (S * T * (S + T))
    assert x_fn(S, T, a, b) == pytest.approx(ref, rel=1e-2)
    assert x_fn_equal(S, T, a) == pytest.approx(ref, rel=1e-2)


def test_x_requires_separated_parameters():
    with pytest.raises(ScalingDomainError):
        x_fn(1.0, 1.0, 1.0, 1.0 + 1e-6)


@settings(max_examples=40)
@given(pos, pos, ab)
def test_x_equal_symmetric(S, T, a):
    assert x_fn_equal(S, T, a) == pytest.approx(x_fn_equal(T, S, a), rel=1e-12)


@pytest.mark.parametrize("S", [0.3, 1.0, 2.5])
def test_logscal_by_finite_differences(S):
    a, h = 1.0, mpmath.mpf("1e-10")
    with mpmath.workdps(40):
        S = mpmath.mpf(S)
        f = lambda s, t: x_fn_equal(s, t, a)
        fd = (f(S + h, S + h) - f(S + h, S - h) - f(S - h, S + h) + f(S - h, S - h)) / (4 * h * h)
        assert float(fd / 3) == pytest.approx(float(logscal_equal(S, a)), rel=1e-8)


@pytest.mark.parametrize("S,T", [(0.5, 0.5), (1.0, 2.0), (3.0, 0.2)])
def test_b_to_a_limit(S, T):
    est, exact = x_b_to_a(S, T, 1.0)
    assert est == pytest.approx(exact, rel=1e-6)


def test_table_invariants():
    t = coefficient_tables(1.0, 1.3)
    for (i, j) in ((0, 0), (3, 0), (0, 3), (3, 3)):
        assert t.n[i][j] == 0
    assert t.d[0][0] == 1
    assert all(t.h[1][j] == 0 and t.h[j][1] == 0 for j in range(len(t.h)))


def test_pde_grid():
    rows = pde_grid()
    assert len(rows) == len(DEFAULT_GRID_AB) ** 2 * len(DEFAULT_GRID_ST) ** 2
    assert max(r["residual"] for r in rows) < 1e-8


def test_pde_equal_path():
    assert max(pde_residual(S, T, 1.0, 1.0) for S in DEFAULT_GRID_ST for T in DEFAULT_GRID_ST) < 1e-8


def _mutated_residual(i, j, a=1.0, b=1.3):
    bad = coefficient_tables(a, b).perturbed("n", i, j, 0.01)
    return max(pde_residual(S, T, a, b, bad) for S in DEFAULT_GRID_ST for T in DEFAULT_GRID_ST)


@pytest.mark.parametrize("i,j", [(0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)])
def test_pde_mutation_guard(i, j):
    assert _mutated_residual(i, j) > 1e-3


def test_every_n_coefficient_is_pinned():
    # high-order entries barely move the grid (sigma, tau are small there) but still
    # push the residual orders of magnitude past the 1e-8 tolerance
    t = coefficient_tables(1.0, 1.3)
    for i, row in enumerate(t.n):
        for j, c in enumerate(row):
            if c != 0:
                assert _mutated_residual(i, j) > 1e-5, (i, j)


@pytest.mark.parametrize("a,b", [(1.0, 1.3), (0.7, 1.0), (1.3, 0.7)])
def test_primitive_identity(a, b):
    worst = max(primitive_residual(k / 10, a, b) for k in range(1, 10))
    assert worst < 1e-5


def test_K_at_zero():
    assert K_fn(0.0, 1.0, 1.3) == 0


def test_K_domain():
    with pytest.raises(ScalingDomainError):
        K_fn(1.0, 1.0, 1.3)


@pytest.mark.parametrize("a,b", [(1.0, 1.3), (0.7, 1.3), (2.0, 0.5)])
def test_K_expansion_constant(a, b):
    assert K_constant_numeric(a, b) == pytest.approx(K_expansion_constant(a, b), abs=1e-12)
    ratio = -(a ** 6 - b ** 6) / (a ** 4 - b ** 4) / 18
    assert singularity_coefficient(a, b) == pytest.approx(ratio, rel=1e-12)
    assert K_expansion_constant(a, b) == pytest.approx(ratio, rel=1e-12)


@settings(max_examples=40)
@given(ab, ab)
def test_singularity_symmetric(a, b):
    assert singularity_coefficient(a, b) == pytest.approx(singularity_coefficient(b, a), rel=1e-14)


def test_singularity_equal_limit():
    assert singularity_coefficient(1.7, 1.7) == pytest.approx(-1.7 ** 2 / 12, rel=1e-14)


@pytest.mark.parametrize("mu", [0.1, 1.0, 4.0])
def test_contour(mu):
    c = contour_value(mu)
    assert c.inner + c.ray + c.outer == pytest.approx(c.total)
    assert abs(c.total - c.closed_form) < 1e-8 * c.closed_form
    assert 4 * math.sqrt(math.pi) * c.total == pytest.approx(math.expm1(mu) / mu, rel=1e-8)


def test_contour_small_mu_limit():
    assert contour_value(1e-6).total == pytest.approx(contour_limit_zero(), rel=1e-5)
    with pytest.raises(ScalingDomainError):
        contour_value(0.0)


def test_first_integral():
    fi = first_integral_check(1e-3, 1.0, 1.3)
    assert fi.relative_difference < 1e-6
    assert fi.primitive == pytest.approx(0.25, abs=1e-5)


def test_first_integral_equal_closed_form():
    eps, a = 1e-2, 1.0
    val = eps * eps * mpmath.quad(lambda S: logscal_equal(S, a), [eps, 1, mpmath.inf])
    assert float(val) == pytest.approx(first_integral_equal_closed(eps, a), rel=1e-10)
    assert first_integral_equal_closed(eps, a) == pytest.approx(0.25 - a * a * eps * eps / 12, abs=1e-8)


def test_equal_tables_match_limit():
    t = equal_tables(1.0)
    assert t.d[0][0] == 1


@pytest.mark.parametrize("eps", [0.02, 0.01])
def test_bridge_exact_recursion(eps):
    bp = local_bridge(eps, 2.0)
    assert bp.recursion_residual < 1e-30
    assert bp.s == round(2.0 / eps)


def test_bridge_error_is_first_order():
    # the discrete profile is centred at s + 3/2, so the gap shrinks like eps
    g1 = local_bridge(0.02, 1.0).gap
    g2 = local_bridge(0.01, 1.0).gap
    g3 = local_bridge(0.005, 1.0).gap
    assert 1.8 < g1 / g2 < 2.2 and 1.8 < g2 / g3 < 2.2


def test_d2x_matches_logscal_at_equal_parameters():
    assert float(d2x_dSdT(0.7, 0.7, 1.0, 1.0)) / 3 == pytest.approx(float(logscal_equal(0.7, 1.0)), rel=1e-10)
