"""Scaling functions near the critical point g = h = 1/12.

With ``g = (1 - a^4 eps^4 / 36) / 12``, ``h = (1 - b^4 eps^4 / 36) / 12`` and
labels ``s = S/eps``, ``t = T/eps``:

* ``R_s(g) = 2 + r(S, a) eps^2 + ...``
* ``X_{s,t}(g, h) = 3 + x(S, T, a, b) eps + ...``

The two-weight function ``x`` is stored through polynomials ``N`` (degree 3 in
each of ``sigma = e^{-aS}``, ``tau = e^{-bT}``) and ``D`` (degree 2), and the
primitive ``K`` through a degree-2 polynomial ``H``.  Their coefficients have
the form ``c0(a, b) + sqrt((a^2 + b^2)/2) c1(a, b)`` and are transcribed in
:func:`coefficient_tables`.

Every function accepts plain floats or ``mpmath.mpf`` values; the latter are
needed where ``x`` is evaluated close to ``S = 0`` and cancellations eat the
double-precision budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from scipy import integrate

DELTA_MIN = 1e-4


class ScalingDomainError(ValueError):
    pass


def _lib(*xs):
    return mpmath if any(isinstance(x, mpmath.mpf) for x in xs) else math


def _exp(x):
    return _lib(x).exp(x)


def _sqrt(x):
    return _lib(x).sqrt(x)


@dataclass(frozen=True)
class ScalingParams:
    a: float
    b: float
    S: float
    T: float

    @property
    def sigma(self):
        return _exp(-self.a * self.S)

    @property
    def tau(self):
        return _exp(-self.b * self.T)


# --------------------------------------------------------------------------
# one weight
# --------------------------------------------------------------------------


def R_frak(sigma, a):
    """``r`` in the variable ``sigma = e^{-aS}``."""
    return -a * a * (1 + 10 * sigma + sigma * sigma) / (3 * (1 - sigma) ** 2)


def r_fn(S, a):
    """``r(S, a) = -a^2 (1 + 10 e^{-aS} + e^{-2aS}) / (3 (1 - e^{-aS})^2)``."""
    if S <= 0 or a <= 0:
        raise ScalingDomainError("r_fn needs S > 0 and a > 0")
    return R_frak(_exp(-a * S), a)


def x_fn_equal(S, T, a):
    """``x(S, T, a)``: the equal-weight scaling function."""
    if S <= 0 or T <= 0 or a <= 0:
        raise ScalingDomainError("x_fn_equal needs S, T, a > 0")
    s, t = _exp(-a * S), _exp(-a * T)
    st = s * t
    return -3 * a - 6 * a * (s + t - 3 * st + st * st) / ((1 - s) * (1 - t) * (1 - st))


def logscal_equal(S, a):
    """``(1/3) d_S d_T x(S, T, a)`` at ``T = S``, in closed form."""
    q = _exp(-2 * a * S)
    return 2 * a ** 3 * q * (1 + q) / (1 - q) ** 3


# --------------------------------------------------------------------------
# coefficient tables
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoeffTables:
    """Numerical ``n[i][j]`` (4x4), ``d[i][j]`` (3x3), ``h[i][j]`` (3x3) and the
    constant term ``c0`` of ``x`` at ``sigma = tau = 0``."""

    n: tuple
    d: tuple
    h: tuple
    c0: object

    def perturbed(self, which: str, i: int, j: int, rel: float) -> "CoeffTables":
        grid = [list(row) for row in getattr(self, which)]
        grid[i][j] = grid[i][j] * (1 + rel)
        kwargs = {"n": self.n, "d": self.d, "h": self.h, "c0": self.c0}
        kwargs[which] = tuple(tuple(r) for r in grid)
        return CoeffTables(**kwargs)


def _split(c0, c1, root):
    return c0 + root * c1


def coefficient_tables(a, b) -> CoeffTables:
    """Polynomial coefficients of ``N``, ``D`` and ``H`` for ``a != b``."""
    if abs(a - b) < DELTA_MIN:
        raise ScalingDomainError(
            f"|a - b| < {DELTA_MIN}: the tables are singular, use the equal-weight path"
        )
    root = _sqrt((a * a + b * b) / 2)
    a2, b2 = a * a, b * b
    amb, apb = a - b, a + b
    P = 2 * a2 + b2  # 2a^2 + b^2
    Q = a2 + 2 * b2  # a^2 + 2b^2
    s4 = 4 * a2 + a * b + 4 * b2
    s1 = a2 + a * b + b2

    n0 = [[0] * 4 for _ in range(4)]
    n1 = [[0] * 4 for _ in range(4)]
    n0[0][1] = -18 * b ** 3 / P
    n0[0][2] = 18 * b ** 3 * (5 * a2 + 7 * b2) / (amb * apb * P)
    n0[1][0] = -18 * a ** 3 / Q
    n0[2][0] = -18 * a ** 3 * (7 * a2 + 5 * b2) / (amb * apb * Q)
    n0[1][1] = 54 * (2 * a**7 + 17 * a**5 * b**2 + 17 * a**4 * b**3 + 17 * a**3 * b**4
                     + 17 * a**2 * b**5 + 2 * b**7) / (amb**2 * P * Q)
    n0[1][2] = -54 * (2 * a**7 + 8 * a**6 * b + 27 * a**5 * b**2 + 47 * a**4 * b**3
                      + 47 * a**3 * b**4 + 51 * a**2 * b**5 + 20 * a * b**6
                      + 14 * b**7) / (amb * apb * P * Q)
    n0[1][3] = 18 * a2 * (2 * a**5 + 12 * a**4 * b + 17 * a**3 * b**2 + 36 * a**2 * b**3
                          + 17 * a * b**4 + 24 * b**5) / (amb * apb * P * Q)
    n0[2][1] = 54 * (14 * a**7 + 20 * a**6 * b + 51 * a**5 * b**2 + 47 * a**4 * b**3
                     + 47 * a**3 * b**4 + 27 * a**2 * b**5 + 8 * a * b**6
                     + 2 * b**7) / (amb * apb * P * Q)
    n0[2][2] = -54 * (14 * a**7 + 12 * a**6 * b + 41 * a**5 * b**2 + 41 * a**4 * b**3
                      + 41 * a**3 * b**4 + 41 * a**2 * b**5 + 12 * a * b**6
                      + 14 * b**7) / (amb**2 * P * Q)
    n0[2][3] = 18 * a2 * (14 * a**5 + 32 * a**4 * b + 51 * a**3 * b**2 + 58 * a**2 * b**3
                          + 37 * a * b**4 + 24 * b**5) / (amb**2 * P * Q)
    n0[3][1] = -18 * b2 * (24 * a**5 + 17 * a**4 * b + 36 * a**3 * b**2 + 17 * a**2 * b**3
                           + 12 * a * b**4 + 2 * b**5) / (amb * apb * P * Q)
    n0[3][2] = 18 * b2 * (24 * a**5 + 37 * a**4 * b + 58 * a**3 * b**2 + 51 * a**2 * b**3
                          + 32 * a * b**4 + 14 * b**5) / (amb**2 * P * Q)

    n1[0][1] = 36 * b2 / P
    n1[0][2] = -36 * b2 * (a2 + 5 * b2) / (amb * apb * P)
    n1[1][0] = 36 * a2 / Q
    n1[2][0] = 36 * a2 * (5 * a2 + b2) / (amb * apb * Q)
    n1[1][1] = -216 * (a**6 - a**5 * b + 8 * a**4 * b**2 + 2 * a**3 * b**3 + 8 * a**2 * b**4
                       - a * b**5 + b**6) / (amb**2 * P * Q)
    n1[1][2] = 216 * s1 * (a**4 + a**3 * b + 9 * a**2 * b**2 + 2 * a * b**3
                           + 5 * b**4) / (amb * apb * P * Q)
    n1[1][3] = -36 * a2 * (2 * a**4 + 6 * a**3 * b + 17 * a**2 * b**2 + 12 * a * b**3
                           + 17 * b**4) / (amb * apb * P * Q)
    n1[2][1] = -216 * s1 * (5 * a**4 + 2 * a**3 * b + 9 * a**2 * b**2 + a * b**3
                            + b**4) / (amb * apb * P * Q)
    n1[2][2] = 216 * (5 * a**6 + 4 * a**5 * b + 13 * a**4 * b**2 + 10 * a**3 * b**3
                      + 13 * a**2 * b**4 + 4 * a * b**5 + 5 * b**6) / (amb**2 * P * Q)
    n1[2][3] = -36 * a2 * (10 * a**4 + 22 * a**3 * b + 33 * a**2 * b**2 + 26 * a * b**3
                           + 17 * b**4) / (amb**2 * P * Q)
    n1[3][1] = 36 * b2 * (17 * a**4 + 12 * a**3 * b + 17 * a**2 * b**2 + 6 * a * b**3
                          + 2 * b**4) / (amb * apb * P * Q)
    n1[3][2] = -36 * b2 * (17 * a**4 + 26 * a**3 * b + 33 * a**2 * b**2 + 22 * a * b**3
                           + 10 * b**4) / (amb**2 * P * Q)

    d0 = [[0] * 3 for _ in range(3)]
    d1 = [[0] * 3 for _ in range(3)]
    d0[0][0] = 1
    d0[0][1] = -4 * Q / P
    d0[0][2] = (2 * a**4 + 17 * a2 * b2 + 17 * b**4) / (amb * apb * P)
    d0[1][0] = -4 * P / Q
    d0[1][1] = 8 * s4 * (a**4 + 7 * a2 * b2 + b**4) / (amb**2 * P * Q)
    d0[1][2] = -4 * (4 * a**5 + 14 * a**4 * b + 22 * a**3 * b**2 + 32 * a**2 * b**3
                     + 19 * a * b**4 + 17 * b**5) / (amb * P * Q)
    d0[2][0] = -(17 * a**4 + 17 * a2 * b2 + 2 * b**4) / (amb * apb * Q)
    d0[2][1] = 4 * (17 * a**5 + 19 * a**4 * b + 32 * a**3 * b**2 + 22 * a**2 * b**3
                    + 14 * a * b**4 + 4 * b**5) / (amb * P * Q)
    d0[2][2] = -(34 * a**6 + 76 * a**5 * b + 137 * a**4 * b**2 + 154 * a**3 * b**3
                 + 137 * a**2 * b**4 + 76 * a * b**5 + 34 * b**6) / (amb**2 * P * Q)

    d1[0][1] = 12 * b / P
    d1[0][2] = -12 * b * Q / (amb * apb * P)
    d1[1][0] = 12 * a / Q
    d1[1][1] = -48 * s1 * (a**4 + 7 * a2 * b2 + b**4) / (amb**2 * apb * P * Q)
    d1[1][2] = 12 * (2 * a**4 + 6 * a**3 * b + 11 * a**2 * b**2 + 9 * a * b**3
                     + 8 * b**4) / (amb * P * Q)
    d1[2][0] = 12 * a * P / (amb * apb * Q)
    d1[2][1] = -12 * (8 * a**4 + 9 * a**3 * b + 11 * a**2 * b**2 + 6 * a * b**3
                      + 2 * b**4) / (amb * P * Q)
    d1[2][2] = 12 * apb * s1 * s4 / (amb**2 * P * Q)

    h0 = [[0] * 3 for _ in range(3)]
    h1 = [[0] * 3 for _ in range(3)]
    ab2 = a2 * b2
    h0[0][0] = -72 * ab2 * s4 / (amb**2 * P * Q)
    h0[0][2] = 72 * ab2 * (8 * a**7 + 46 * a**6 * b + 114 * a**5 * b**2 + 237 * a**4 * b**3
                           + 261 * a**3 * b**4 + 333 * a**2 * b**5 + 157 * a * b**6
                           + 140 * b**7) / (amb**3 * apb**2 * P**2 * Q)
    h0[2][0] = -72 * ab2 * (140 * a**7 + 157 * a**6 * b + 333 * a**5 * b**2
                            + 261 * a**4 * b**3 + 237 * a**3 * b**4 + 114 * a**2 * b**5
                            + 46 * a * b**6 + 8 * b**7) / (amb**3 * apb**2 * P * Q**2)
    h0[2][2] = 72 * ab2 * s4 * (70 * a**6 + 148 * a**5 * b + 281 * a**4 * b**2
                                + 298 * a**3 * b**3 + 281 * a**2 * b**4 + 148 * a * b**5
                                + 70 * b**6) / (amb**4 * P**2 * Q**2)

    h1[0][0] = 432 * ab2 * s1 / (amb**2 * apb * P * Q)
    h1[0][2] = -432 * ab2 * (2 * a**6 + 10 * a**5 * b + 29 * a**4 * b**2 + 43 * a**3 * b**3
                             + 62 * a**2 * b**4 + 37 * a * b**5
                             + 33 * b**6) / (amb**3 * apb**2 * P**2 * Q)
    h1[2][0] = 432 * ab2 * (33 * a**6 + 37 * a**5 * b + 62 * a**4 * b**2 + 43 * a**3 * b**3
                            + 29 * a**2 * b**4 + 10 * a * b**5
                            + 2 * b**6) / (amb**3 * apb**2 * P * Q**2)
    h1[2][2] = -1296 * ab2 * s1 * (22 * a**6 + 52 * a**5 * b + 89 * a**4 * b**2
                                   + 106 * a**3 * b**3 + 89 * a**2 * b**4 + 52 * a * b**5
                                   + 22 * b**6) / (amb**4 * apb * P**2 * Q**2)

    def combine(t0, t1):
        return tuple(tuple(_split(x, y, root) for x, y in zip(r0, r1)) for r0, r1 in zip(t0, t1))

    return CoeffTables(combine(n0, n1), combine(d0, d1), combine(h0, h1), -3 * root)


def equal_tables(a) -> CoeffTables:
    """The ``b = a`` limit: ``N = 6a(s + t - 3st + s^2 t^2)``, ``D = 1 - st``, ``H = 1``."""
    z = 0 * a
    n = [[z] * 4 for _ in range(4)]
    n[1][0] = n[0][1] = 6 * a
    n[1][1] = -18 * a
    n[2][2] = 6 * a
    d = [[z] * 3 for _ in range(3)]
    d[0][0] = z + 1
    d[1][1] = z - 1
    h = [[z] * 3 for _ in range(3)]
    h[0][0] = z + 1
    return CoeffTables(tuple(map(tuple, n)), tuple(map(tuple, d)), tuple(map(tuple, h)), -3 * a)


def tables_for(a, b) -> CoeffTables:
    if abs(a - b) < DELTA_MIN:
        return equal_tables(a)
    return coefficient_tables(a, b)


# --------------------------------------------------------------------------
# evaluation with analytic derivatives
# --------------------------------------------------------------------------


def _poly(c, s, t):
    """``(P, P_s, P_t, P_st)`` for ``P = sum c[i][j] s^i t^j``."""
    n = len(c)
    sp = [s ** i for i in range(n)]
    tp = [t ** j for j in range(n)]
    v = vs = vt = vst = 0
    for i in range(n):
        for j in range(n):
            cij = c[i][j]
            if not cij:
                continue
            v += cij * sp[i] * tp[j]
            if i:
                vs += cij * i * sp[i - 1] * tp[j]
            if j:
                vt += cij * j * sp[i] * tp[j - 1]
            if i and j:
                vst += cij * i * j * sp[i - 1] * tp[j - 1]
    return v, vs, vt, vst


@dataclass(frozen=True)
class XValue:
    """``X`` and its partial derivatives in ``sigma``, ``tau``."""

    value: object
    d_sigma: object
    d_tau: object
    d_sigma_tau: object


def X_frak(sigma, tau, tables: CoeffTables) -> XValue:
    """``X = c0 - N / ((1 - sigma)(1 - tau) D)`` with exact derivative formulas."""
    P, Ps, Pt, Pst = _poly(tables.n, sigma, tau)
    D, Ds, Dt, Dst = _poly(tables.d, sigma, tau)
    A, B = 1 - sigma, 1 - tau
    Q = A * B * D
    Qs = -B * D + A * B * Ds
    Qt = -A * D + A * B * Dt
    Qst = D - B * Dt - A * Ds + A * B * Dst
    Fs = (Ps * Q - P * Qs) / Q ** 2
    Ft = (Pt * Q - P * Qt) / Q ** 2
    Fst = (Pst * Q + Ps * Qt - Pt * Qs - P * Qst) / Q ** 2 - 2 * Qt * (Ps * Q - P * Qs) / Q ** 3
    return XValue(tables.c0 - P / Q, -Fs, -Ft, -Fst)


def x_fn(S, T, a, b, tables: CoeffTables | None = None):
    """Two-weight scaling function ``x(S, T, a, b)`` for ``|a - b| >= DELTA_MIN``."""
    if S <= 0 or T <= 0 or a <= 0 or b <= 0:
        raise ScalingDomainError("x_fn needs S, T, a, b > 0")
    if abs(a - b) < DELTA_MIN:
        raise ScalingDomainError(f"|a - b| < {DELTA_MIN}; call x_fn_equal instead")
    tables = tables or coefficient_tables(a, b)
    return X_frak(_exp(-a * S), _exp(-b * T), tables).value


def d2x_dSdT(S, T, a, b, tables: CoeffTables | None = None):
    """``d_S d_T x = a b sigma tau X_{sigma tau}``."""
    tables = tables or tables_for(a, b)
    s, t = _exp(-a * S), _exp(-b * T)
    return a * b * s * t * X_frak(s, t, tables).d_sigma_tau


def pde_residual(S, T, a, b, tables: CoeffTables | None = None):
    """Relative residual of ``2X^2 - 6(a s X_s + b t X_t) + 27(R(s,a) + R(t,b)) = 0``."""
    tables = tables or tables_for(a, b)
    s, t = _exp(-a * S), _exp(-b * T)
    xv = X_frak(s, t, tables)
    rr = R_frak(s, a) + R_frak(t, b)
    res = 2 * xv.value ** 2 - 6 * (a * s * xv.d_sigma + b * t * xv.d_tau) + 27 * rr
    return abs(res) / abs(27 * rr)


DEFAULT_GRID_AB = (0.7, 1.0, 1.3)
DEFAULT_GRID_ST = (0.2, 0.5, 1.0, 1.5, 2.0, 3.0)


def pde_grid(ab=DEFAULT_GRID_AB, st=DEFAULT_GRID_ST, include_equal: bool = True) -> list[dict]:
    rows = []
    for a in ab:
        for b in ab:
            if a == b and not include_equal:
                continue
            for S in st:
                for T in st:
                    rows.append({"a": a, "b": b, "S": S, "T": T,
                                 "residual": pde_residual(S, T, a, b)})
    return rows


# --------------------------------------------------------------------------
# primitive and singularity
# --------------------------------------------------------------------------


def K_fn(sigma, a, b, tables: CoeffTables | None = None):
    """``K(sigma) = a b sigma tau H / D^2`` at ``tau = sigma^(b/a)``."""
    if not 0 <= sigma < 1:
        raise ScalingDomainError("K_fn needs 0 <= sigma < 1")
    if sigma == 0:
        return 0 * sigma
    tables = tables or tables_for(a, b)
    tau = sigma ** (b / a)
    H = _poly(tables.h, sigma, tau)[0]
    D = _poly(tables.d, sigma, tau)[0]
    return a * b * sigma * tau * H / D ** 2


def K_integrand(sigma, a, b, tables: CoeffTables | None = None):
    """``(1/3) b sigma^(b/a) X_{sigma tau}`` at ``tau = sigma^(b/a)``."""
    tables = tables or tables_for(a, b)
    tau = sigma ** (b / a)
    return b * tau * X_frak(sigma, tau, tables).d_sigma_tau / 3


def primitive_residual(sigma, a, b, step: float = 1e-5, tables: CoeffTables | None = None):
    """Relative gap between a central difference of ``K`` and its claimed derivative."""
    tables = tables or tables_for(a, b)
    fd = (K_fn(sigma + step, a, b, tables) - K_fn(sigma - step, a, b, tables)) / (2 * step)
    exact = K_integrand(sigma, a, b, tables)
    return abs(fd - exact) / abs(exact)


def singularity_coefficient(a, b):
    """``-(1/18)(a^6 - b^6)/(a^4 - b^4)``, written in a form continuous at ``b = a``."""
    if a <= 0 or b <= 0:
        raise ScalingDomainError("need a, b > 0")
    return -(a ** 4 + a * a * b * b + b ** 4) / (18 * (a * a + b * b))


def K_expansion_constant(a, b):
    """The ``eps^0`` term of ``K(e^{-a eps})``, as stated: ``-(a^2-ab+b^2)(a^2+ab+b^2)/(18(a^2+b^2))``."""
    return -(a * a - a * b + b * b) * (a * a + a * b + b * b) / (18 * (a * a + b * b))


def K_constant_numeric(a, b, eps: float = 1e-8, dps: int = 60):
    """``K(e^{-a eps}) - 1/(4 eps^2)`` in high precision, Richardson-corrected."""
    with mpmath.workdps(dps):
        A, B = mpmath.mpf(a), mpmath.mpf(b)
        tables = tables_for(A, B)

        def c(e):
            e = mpmath.mpf(e)
            return K_fn(mpmath.exp(-A * e), A, B, tables) - 1 / (4 * e * e)

        # the remainder is O(eps^2)
        c1, c2 = c(eps), c(2 * eps)
        return float((4 * c1 - c2) / 3)


# --------------------------------------------------------------------------
# contour integral
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ContourResult:
    mu: float
    inner: float
    ray: float
    outer: float
    total: float
    closed_form: float


def _t4(t):
    return t ** 4 * math.exp(-t * t)


def contour_value(mu: float) -> ContourResult:
    """The three contour pieces, summed, against ``(e^mu - 1) / (4 sqrt(pi) mu)``."""
    if mu <= 0:
        raise ScalingDomainError("contour_value needs mu > 0; the mu -> 0 limit is 1/(4 sqrt(pi))")
    pref = 2 / (3 * math.pi)
    r = math.sqrt(mu)
    inner = pref * math.exp(mu) / mu * integrate.quad(_t4, 0, r, epsabs=1e-12, epsrel=1e-12)[0]
    ray = -pref / mu * integrate.quad(_t4, 0, math.inf, epsabs=1e-12, epsrel=1e-12)[0]
    outer = pref * math.exp(mu) / mu * integrate.quad(_t4, r, math.inf, epsabs=1e-12, epsrel=1e-12)[0]
    closed = math.expm1(mu) / (4 * math.sqrt(math.pi) * mu)
    return ContourResult(mu, inner, ray, outer, inner + ray + outer, closed)


def contour_limit_zero() -> float:
    return 1 / (4 * math.sqrt(math.pi))


# --------------------------------------------------------------------------
# first integral
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class FirstIntegral:
    quadrature: float
    primitive: float
    relative_difference: float


def first_integral_check(epsilon: float = 1e-3, a: float = 1.0, b: float = 1.3,
                         dps: int = 40) -> FirstIntegral:
    """``eps^2 int_eps^inf (1/3) d_S d_T x |_{T=S} dS`` against ``eps^2 K(e^{-a eps})``."""
    if epsilon <= 0:
        raise ScalingDomainError("epsilon must be positive")
    with mpmath.workdps(dps):
        A, B, E = mpmath.mpf(a), mpmath.mpf(b), mpmath.mpf(epsilon)
        tables = tables_for(A, B)

        def f(S):
            return d2x_dSdT(S, S, A, B, tables) / 3

        # the integrand behaves like 1/(2 S^3); split geometrically
        pts = [E]
        while pts[-1] < 1:
            pts.append(pts[-1] * 10)
        pts.append(mpmath.inf)
        quad = E * E * mpmath.quad(f, pts)
        prim = E * E * K_fn(mpmath.exp(-A * E), A, B, tables)
        rel = abs(quad - prim) / abs(prim)
        return FirstIntegral(float(quad), float(prim), float(rel))


def first_integral_equal_closed(epsilon: float, a: float) -> float:
    """``eps^2 a^2 e^{-2 a eps} / (1 - e^{-2 a eps})^2``."""
    q = math.exp(-2 * a * epsilon)
    return epsilon ** 2 * a * a * q / (-math.expm1(-2 * a * epsilon)) ** 2


def x_b_to_a(S, T, a, delta: float = 1e-3, dps: int = 40) -> tuple[float, float]:
    """``x(S,T,a,b)`` extrapolated to ``b = a`` from both sides, and ``x_fn_equal``."""
    with mpmath.workdps(dps):
        A = mpmath.mpf(a)
        d = mpmath.mpf(delta) * A

        def sym(h):
            return (x_fn(S, T, A, A + h) + x_fn(S, T, A, A - h)) / 2

        # symmetric average removes the O(h) term, Richardson the O(h^2) one
        est = (4 * sym(d) - sym(2 * d)) / 3
        return float(est), float(x_fn_equal(mpmath.mpf(S), mpmath.mpf(T), A))


# --------------------------------------------------------------------------
# bridge to the exact recursion
# --------------------------------------------------------------------------


def x_at_scaling_point(epsilon, a):
    """Root ``x < 1`` of ``g(x) = (1 - a^4 eps^4 / 36) / 12``."""
    y = a * a * epsilon * epsilon / 6
    return (1 + 2 * y - _sqrt(3 * y * (2 + y))) / (1 - y)


def R_closed_numeric(s: int, x):
    """Closed-form ``R_s`` evaluated at a numeric ``x``."""
    return ((1 + 4 * x + x * x) / (1 + x + x * x)
            * (1 - x ** s) * (1 - x ** (s + 3)) / ((1 - x ** (s + 1)) * (1 - x ** (s + 2))))


@dataclass(frozen=True)
class BridgePoint:
    epsilon: float
    S: float
    a: float
    s: int
    local: float
    scaling: float
    gap: float
    recursion_residual: float


def local_bridge(epsilon: float, S: float, a: float = 1.0, dps: int = 40) -> BridgePoint:
    """``(R_{floor(S/eps)}(g) - 2) / eps^2`` at the scaling point, against ``r(S, a)``.

    ``R_s`` is taken from the closed form; its agreement with the recursion at this
    ``g`` is reported as the largest relative recursion residual over ``s' <= s + 1``.
    """
    s = int(math.floor(S / epsilon + 1e-9))
    with mpmath.workdps(dps):
        E, A = mpmath.mpf(epsilon), mpmath.mpf(a)
        x = x_at_scaling_point(E, A)
        g = (1 - A ** 4 * E ** 4 / 36) / 12
        Rs = [mpmath.mpf(0)] + [R_closed_numeric(k, x) for k in range(1, s + 3)]
        resid = max(
            abs(Rs[k] - 1 - g * Rs[k] * (Rs[k - 1] + Rs[k] + Rs[k + 1])) / Rs[k]
            for k in range(1, s + 2)
        )
        local = (Rs[s] - 2) / E ** 2
        scal = r_fn(mpmath.mpf(S), A)
        return BridgePoint(epsilon, S, a, s, float(local), float(scal),
                           float(abs(local - scal)), float(resid))
