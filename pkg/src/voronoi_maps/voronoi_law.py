"""Two-cell generating function F(g, h) and the exact finite-N area laws.

``F`` is assembled from the chain table as

    F = sum_{s >= 1} log( X_{s,s} X_{s-1,s-1} / (X_{s-1,s} X_{s,s-1}) ),

which only touches the three stored diagonals.  The even part uses ``N_{s,t}``
in place of ``X_{s,t}``; the odd part is the difference.  The coefficient of
``g^{N-p/2} h^{p/2}`` weighs maps of total area ``N`` whose second cell has
area ``p/2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .exact_arith import BiSeries, TruncationError, UniSeries
from .recursions import N_table, solve_X, x_of_g

VARIANTS = ("all", "even", "odd")


@dataclass(frozen=True)
class FSeries:
    variant: str
    series: BiSeries = field(repr=False)
    s_terms_used: int

    @property
    def order(self) -> int:
        return self.series.order


@dataclass(frozen=True)
class LawTable:
    N: int
    variant: str
    weights: tuple
    normalization: object
    probabilities: tuple

    def areas(self) -> list[Fraction]:
        return [Fraction(p, 2) for p in range(2 * self.N + 1)]


def _summands(table: dict):
    """Yield ``(s, Q_s)`` with ``log Q_s`` the ``s``-th term of the sum."""
    s_max = max(s for s, _ in table)
    for s in range(1, s_max + 1):
        num = table[(s, s)] * table[(s - 1, s - 1)]
        den = table[(s - 1, s)] * table[(s, s - 1)]
        yield s, num * den.reciprocal()


def _assemble(entries: dict, order: int, exact: bool = True) -> tuple[BiSeries, int]:
    K = order // 2
    product = BiSeries.one(order)
    used = 0
    for s, q in _summands(entries):
        # rounding keeps float summands off 1; the exact path proves they vanish past K+1
        if (q == BiSeries.one(order)) if exact else s > K + 1:
            break
        if s > K + 1:
            raise AssertionError(f"summand s={s} does not vanish beyond K+1={K + 1}")
        product = product * q
        used = s
    else:
        raise AssertionError("ran out of table rows before the summands vanished")
    # a product of logs is the log of the product
    return product.log(), used


def F_series(order: int, variant: str = "all", backend: str = "exact") -> FSeries:
    """``F`` (or its even/odd part) at total degree ``<= order``."""
    if order < 2:
        raise ValueError("F_series needs order >= 2")
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    return _F_cached(order, variant, backend)


@lru_cache(maxsize=16)
def _F_cached(order: int, variant: str, backend: str) -> FSeries:
    if variant == "odd":
        a = _F_cached(order, "all", backend)
        e = _F_cached(order, "even", backend)
        return FSeries("odd", a.series - e.series, max(a.s_terms_used, e.s_terms_used))
    K = order // 2
    xt = solve_X(K + 2, order, backend)
    entries = dict(xt.entries) if variant == "all" else N_table(xt)
    series, used = _assemble(entries, order, backend == "exact")
    return FSeries(variant, series, used)


def law_table(N: int, variant: str = "all", backend: str = "exact",
              fseries: FSeries | None = None) -> LawTable:
    """Distribution of the second cell's area ``p/2`` among maps of area ``N``."""
    if N < 1:
        raise ValueError("N must be >= 1")
    if fseries is None:
        fseries = F_series(2 * N, variant, backend)
    if fseries.order < 2 * N:
        raise TruncationError(f"series truncated at {fseries.order}, need {2 * N}")
    weights = fseries.series.stratum(N)
    total = sum(weights)
    if not total:
        raise ZeroDivisionError(f"empty stratum at N={N}")
    if isinstance(total, float):
        probs = tuple(w / total for w in weights)
    else:
        probs = tuple(Fraction(w) / Fraction(total) for w in weights)
    return LawTable(N, fseries.variant, weights, total, probs)


def mgf(N: int, mu: float, variant: str = "all", backend: str = "exact") -> float:
    """``E_N[exp(mu n / N)]`` under the exact law."""
    law = law_table(N, variant, backend)
    return math.fsum(math.exp(mu * p / (2 * N)) * float(P) for p, P in enumerate(law.probabilities))


def mgf_limit(mu: float) -> float:
    return 1.0 if mu == 0 else math.expm1(mu) / mu


def diagonal_count(N: int, backend: str = "exact"):
    """``[g^N] F(g, g)``."""
    return sum(F_series(2 * N, "all", backend).series.stratum(N))


def asym_count(N: int) -> float:
    return 0.25 * 12.0 ** N / (math.sqrt(math.pi) * N ** 1.5)


def asym_ratio(N: int, backend: str = "exact") -> float:
    """Exact ``[g^N] F(g,g)`` over ``(1/4) 12^N / (sqrt(pi) N^{3/2})``."""
    return float(Fraction(diagonal_count(N, backend)) / Fraction(asym_count(N)))


def F_diag_closed(order: int) -> UniSeries:
    """``log((1-x^2)^2 / ((1-x)(1-x^3)))`` expanded in ``g``, truncated at ``g**order``."""
    num = UniSeries([1, 0, -1], order) ** 2
    den = UniSeries([1, -1], order) * UniSeries([1, 0, 0, -1], order)
    return (num * den.reciprocal()).log().compose(x_of_g(order))


@dataclass
class UniformityReport:
    N: int
    window: tuple[int, int]
    max_deviation: float
    mean_deviation: float
    endpoint_deviation: dict
    deviations: list = field(repr=False)
    probabilities: tuple = field(repr=False)


def deviation_profile(probabilities, N: int) -> list[float]:
    return [abs((2 * N + 1) * float(P) - 1.0) for P in probabilities]


def uniformity_report(N: int, lo: float = 0.2, hi: float = 0.8, variant: str = "all",
                      backend: str = "exact", law: LawTable | None = None) -> UniformityReport:
    """Deviation of ``(2N+1) P(p)`` from 1 over the window ``p in [lo*2N, hi*2N]``."""
    if law is None:
        law = law_table(N, variant, backend)
    dev = deviation_profile(law.probabilities, N)
    p_lo = math.ceil(lo * 2 * N)
    p_hi = math.floor(hi * 2 * N)
    window = dev[p_lo:p_hi + 1]
    ends = {p: dev[p] for p in sorted({0, 1, 2 * N - 1, 2 * N}) if 0 <= p <= 2 * N}
    return UniformityReport(
        N=N,
        window=(p_lo, p_hi),
        max_deviation=max(window),
        mean_deviation=math.fsum(window) / len(window),
        endpoint_deviation=ends,
        deviations=dev,
        probabilities=law.probabilities,
    )


def ident_series(order: int) -> BiSeries:
    """``(1/6) (v phi(v^2) - u phi(u^2)) / (v - u)`` with ``phi(y) = (1 - 12 y)^{3/2}``.

    The quotient is expanded termwise: ``(v^m - u^m)/(v - u)`` is the complete
    homogeneous sum of degree ``m - 1``.
    """
    K = order // 2
    coeffs = phi_coefficients(K)
    parts = [None] * (order + 1)
    for n, c in enumerate(coeffs):
        d = 2 * n
        if d <= order:
            parts[d] = [Fraction(c, 6)] * (d + 1)
    return BiSeries(parts)


def phi_coefficients(K: int) -> list[Fraction]:
    """Taylor coefficients of ``(1 - 12 y)^{3/2}`` up to ``y**K``."""
    out = [Fraction(1)]
    for n in range(1, K + 1):
        # binomial(3/2, n) (-12)^n, built incrementally
        out.append(out[-1] * (Fraction(3, 2) - (n - 1)) / n * -12)
    return out
