"""Well-labelled tree and labelled chain generating functions.

``R_s(g)`` counts planar labelled trees rooted at label ``s`` whose labels stay
``>= 1``; it is the unique solution of

    R_s = 1 + g R_s (R_{s-1} + R_s + R_{s+1}),    R_0 = 0.

``X_{s,t}(g, h)`` counts labelled chains between endpoints at labels ``s`` and
``t`` (trees on the ``s`` side weighted by ``g``, on the ``t`` side by ``h``,
spine edges by ``sqrt(g h) = u v``):

    X_{s,t} = 1 + uv R_s(g) R_t(h) X_{s,t} (1 + uv R_{s+1}(g) R_{t+1}(h) X_{s+1,t+1}).

Both families stabilise in ``s`` once ``s`` exceeds the truncation order, which
is what closes the systems at ``s_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact_arith import BiSeries, UniSeries

OFFSETS = (-1, 0, 1)


class ConfigurationError(ValueError):
    """Table parameters for which the stabilisation argument does not hold."""


@dataclass(frozen=True)
class RTable:
    order: int
    entries: tuple  # UniSeries for s = 0..s_max
    stabilized: UniSeries

    @property
    def s_max(self) -> int:
        return len(self.entries) - 1

    def __getitem__(self, s: int) -> UniSeries:
        if s < 0:
            raise IndexError(s)
        if s > self.s_max:
            return self.stabilized
        return self.entries[s]


@dataclass(frozen=True)
class XTable:
    order: int
    s_max: int
    entries: dict = field(repr=False)
    stabilized: BiSeries = field(repr=False)
    r_table: RTable = field(repr=False)

    def __getitem__(self, st: tuple[int, int]) -> BiSeries:
        s, t = st
        if s == 0 or t == 0:
            return BiSeries.one(self.order)
        if abs(t - s) > 1:
            raise KeyError(f"offset {t - s} is not stored")
        if s > self.s_max or t > self.s_max:
            return self.stabilized
        return self.entries[st]


def _to_backend(c, backend: str):
    return float(c) if backend == "float" else c


def solve_R_infinity(order: int) -> UniSeries:
    """Solve ``R = 1 + 3 g R**2`` order by order."""
    r = [1]
    for n in range(1, order + 1):
        r.append(3 * sum(r[i] * r[n - 1 - i] for i in range(n)))
    return UniSeries(r)


def solve_R(s_max: int, order: int) -> RTable:
    """Tabulate ``R_0 .. R_{s_max}`` modulo ``g**(order+1)``."""
    if s_max < 1 or order < 0:
        raise ConfigurationError("need s_max >= 1 and order >= 0")
    if s_max <= order:
        raise ConfigurationError(
            f"s_max={s_max} must exceed the order {order} for the boundary closure to be exact"
        )
    return _solve_R_cached(s_max, order)


@lru_cache(maxsize=16)
def _solve_R_cached(s_max: int, order: int) -> RTable:
    K = order
    inf = solve_R_infinity(K)
    # coeffs[s][n]; row s_max + 1 is the stabilised closure
    coeffs = [[0] * (K + 1)] + [[1] + [0] * K for _ in range(s_max)] + [list(inf.coeffs)]
    for n in range(1, K + 1):
        for s in range(1, s_max + 1):
            rs = coeffs[s]
            lo, mid, hi = coeffs[s - 1], rs, coeffs[s + 1]
            acc = 0
            for i in range(n):
                j = n - 1 - i
                acc += rs[i] * (lo[j] + mid[j] + hi[j])
            rs[n] = acc
    entries = tuple(UniSeries(c) for c in coeffs[: s_max + 1])
    if entries[s_max] != inf:
        raise AssertionError("R_s failed to stabilise at s_max")
    return RTable(order=K, entries=entries, stabilized=inf)


def recursion_residual_R(table: RTable) -> list[UniSeries]:
    """``R_s - 1 - g R_s (R_{s-1}+R_s+R_{s+1})`` for each ``1 <= s <= s_max``."""
    g = UniSeries.variable(table.order)
    return [
        table[s] - 1 - g * table[s] * (table[s - 1] + table[s] + table[s + 1])
        for s in range(1, table.s_max + 1)
    ]


@lru_cache(maxsize=4)
def x_of_g(order: int) -> UniSeries:
    """``x(g)``, inverse of ``g = x (1+x+x^2) / (1+4x+x^2)^2``."""
    g_of_x = UniSeries([0, 1, 1, 1], order) * (UniSeries([1, 4, 1], order) ** 2).reciprocal()
    return g_of_x.revert()


def _one_minus_xpow(m: int, order: int) -> UniSeries:
    c = [0] * (order + 1)
    c[0] = 1
    if m <= order:
        c[m] -= 1
    return UniSeries(c)


def _rational_in_x(num_pows, den_pows, order: int, num_extra=None, den_extra=None) -> UniSeries:
    num = UniSeries.one(order)
    for m in num_pows:
        num = num * _one_minus_xpow(m, order)
    den = UniSeries.one(order)
    for m in den_pows:
        den = den * _one_minus_xpow(m, order)
    if num_extra is not None:
        num = num * UniSeries(num_extra, order)
    if den_extra is not None:
        den = den * UniSeries(den_extra, order)
    return (num * den.reciprocal()).compose(x_of_g(order))


def closed_R(s: int, order: int) -> UniSeries:
    """Closed-form ``R_s`` expanded in ``g``.

    ``R_s = (1+4x+x^2)/(1+x+x^2) * (1-x^s)(1-x^{s+3}) / ((1-x^{s+1})(1-x^{s+2}))``.
    """
    if s < 1:
        raise ValueError("closed_R needs s >= 1")
    return _rational_in_x((s, s + 3), (s + 1, s + 2), order, [1, 4, 1], [1, 1, 1])


def closed_R_infinity(order: int) -> UniSeries:
    return _rational_in_x((), (), order, [1, 4, 1], [1, 1, 1])


def closed_X_diag(s: int, t: int, order: int) -> UniSeries:
    """Closed-form ``X_{s,t}(g, g)`` as a series in ``g`` truncated at ``g**order``."""
    if s < 0 or t < 0:
        raise ValueError("closed_X_diag needs s, t >= 0")
    if s == 0 or t == 0:
        return UniSeries.one(order)
    return _rational_in_x(
        (3, s + 1, t + 1, s + t + 3), (1, s + 3, t + 3, s + t + 1), order
    )


def _spine_factor(rg: UniSeries, rh: UniSeries, order: int) -> BiSeries:
    """``uv R(g) R(h)`` truncated at total degree ``order``."""
    return BiSeries.outer(rg, rh, order).times_uv()


def solve_X_infinity(r_inf: UniSeries, order: int, backend: str = "exact") -> BiSeries:
    """Fixed point of ``X = 1 / (1 - A (1 + A X))`` with ``A = uv R_inf(g) R_inf(h)``."""
    A = _spine_factor(r_inf, r_inf, order).map_coeffs(lambda c: _to_backend(c, backend))
    X = BiSeries.one(order)
    # each pass fixes two more total degrees
    for _ in range(order // 2 + 1):
        X = (1 - A * (1 + A * X)).reciprocal()
    return X


def solve_X(s_max: int, order: int, backend: str = "exact") -> XTable:
    """Tabulate ``X_{s,s+d}`` for ``d`` in (-1, 0, 1) at total degree ``<= order``.

    ``order`` is the total degree ``2K`` in ``u, v``; ``s_max`` must exceed ``K``.
    """
    if order < 0:
        raise ConfigurationError("negative order")
    K = order // 2
    if s_max <= K:
        raise ConfigurationError(
            f"s_max={s_max} must exceed K={K} for the boundary closure to be exact"
        )
    if backend not in ("exact", "float"):
        raise ConfigurationError(f"unknown backend {backend!r}")
    return _solve_X_cached(s_max, order, backend)


@lru_cache(maxsize=8)
def _solve_X_cached(s_max: int, order: int, backend: str) -> XTable:
    K = order // 2
    rt = solve_R(s_max + 1, K)
    x_inf = solve_X_infinity(rt.stabilized, order, backend)
    one = BiSeries.one(order)
    spine = {}

    def A(s, t):
        key = (s, t)
        if key not in spine:
            f = _spine_factor(rt[s], rt[t], order)
            spine[key] = f.map_coeffs(lambda c: _to_backend(c, backend)) if backend == "float" else f
        return spine[key]

    entries = {}
    for d in OFFSETS:
        for s in range(s_max, -1, -1):
            t = s + d
            if t < 0 or t > s_max:
                continue
            if s == 0 or t == 0:
                entries[(s, t)] = one
                continue
            if s + 1 > s_max or t + 1 > s_max:
                nxt = x_inf
            else:
                nxt = entries[(s + 1, t + 1)]
            inner = 1 + A(s + 1, t + 1) * nxt
            entries[(s, t)] = (1 - A(s, t) * inner).reciprocal()

    table = XTable(order=order, s_max=s_max, entries=entries, stabilized=x_inf, r_table=rt)
    # stabilisation is a consequence of the label-depth bound; check it
    if s_max >= K + 1 and entries[(K + 1, K + 1)] != x_inf:
        raise AssertionError("X_{s,s} failed to stabilise at s = K+1")
    return table


def recursion_residual_X(table: XTable, s: int, t: int) -> BiSeries:
    """Residual of the chain recursion at ``(s, t)``; identically zero when solved."""
    o = table.order
    rt = table.r_table
    A = _spine_factor(rt[s], rt[t], o)
    B = _spine_factor(rt[s + 1], rt[t + 1], o) * table[s + 1, t + 1]
    X = table[s, t]
    return X - 1 - A * X * (1 + B)


def N_from_X(x: BiSeries, r_s: UniSeries, r_t: UniSeries) -> BiSeries:
    """Chains with no spine edge joining two minimal labels: ``X / (1 + uv R_s R_t X)``."""
    A = _spine_factor(r_s, r_t, x.order)
    return x * (1 + A * x).reciprocal()


def Z_from_X(x: BiSeries) -> BiSeries:
    """Non-empty primitive sequences: ``Z = 1 - 1/X``."""
    return 1 - x.reciprocal()


def N_table(table: XTable) -> dict:
    """``N_{s,t}`` for every stored ``(s, t)`` (entries with a zero index stay 1)."""
    rt = table.r_table
    out = {}
    for (s, t), x in table.entries.items():
        out[(s, t)] = x if s == 0 or t == 0 else N_from_X(x, rt[s], rt[t])
    return out
