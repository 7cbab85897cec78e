"""Truncated power series over exact rationals.

Two containers are provided:

* :class:`UniSeries` -- dense series in one variable, truncated at degree ``D``.
* :class:`BiSeries` -- series in two variables ``u, v`` truncated at total
  degree ``T``.  They stand for ``u = sqrt(g)`` and ``v = sqrt(h)``, so the
  monomial ``u**i * v**j`` encodes ``g**(i/2) * h**(j/2)``.  Coefficients are
  stored per homogeneous part: ``parts[d][i]`` is the coefficient of
  ``u**i * v**(d - i)``.

Coefficients are Python ``int``/``Fraction`` (the exact backend) or ``float``
(the optional double backend).  Integer coefficients stay integers as long as
no division by a non-unit happens, which keeps the generating-function
recursions fast.  Both classes are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Iterable, Mapping

Rational = Fraction


class SeriesDomainError(ValueError):
    """Operation undefined for the given series (e.g. log with constant != 1)."""


class TruncationError(IndexError):
    """Coefficient requested beyond the truncation order."""


def _exact_div(c, d):
    if d == 1:
        return c
    if isinstance(c, float) or isinstance(d, float):
        return c / d
    q = Fraction(c, d) if isinstance(c, int) and isinstance(d, int) else c / d
    if isinstance(q, Fraction) and q.denominator == 1:
        return q.numerator
    return q


def as_rational(c) -> Fraction:
    if isinstance(c, float):
        raise TypeError("floating coefficient in an exact series")
    return Fraction(c)


def _conv(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if not x:
            continue
        for j, y in enumerate(q):
            if y:
                out[i + j] += x * y
    return out


# --------------------------------------------------------------------------
# univariate
# --------------------------------------------------------------------------


class UniSeries:
    """Dense truncated power series ``c[0] + c[1] t + ... + c[D] t**D``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("negative truncation order")
            c = (c + [0] * (order + 1))[: order + 1]
        if not c:
            raise ValueError("a series needs at least its constant term")
        self._c = tuple(c)

    # construction helpers
    @classmethod
    def zero(cls, order: int) -> "UniSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int, unit=1) -> "UniSeries":
        return cls([unit], order)

    @classmethod
    def variable(cls, order: int) -> "UniSeries":
        return cls([0, 1], order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, n: int):
        if n < 0:
            return 0
        if n > self.order:
            raise TruncationError(f"degree {n} beyond truncation {self.order}")
        return self._c[n]

    def coeff(self, n: int) -> Fraction:
        return as_rational(self[n])

    def truncate(self, order: int) -> "UniSeries":
        if order > self.order:
            raise TruncationError("cannot extend a truncated series")
        return UniSeries(self._c[: order + 1])

    def __repr__(self):
        terms = [f"{c}*t^{n}" for n, c in enumerate(self._c) if c]
        return f"UniSeries({' + '.join(terms) or '0'} + O(t^{self.order + 1}))"

    def __eq__(self, other):
        if isinstance(other, UniSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    # ring operations
    def _coerce(self, other) -> "UniSeries":
        if isinstance(other, UniSeries):
            return other
        if isinstance(other, Number):
            return UniSeries([other], self.order)
        raise TypeError(f"cannot combine UniSeries with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return UniSeries([self._c[k] + o._c[k] for k in range(n + 1)])

    __radd__ = __add__

    def __neg__(self):
        return UniSeries([-c for c in self._c])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return UniSeries([c * other for c in self._c])
        o = self._coerce(other)
        n = min(self.order, o.order)
        a, b = self._c, o._c
        out = [0] * (n + 1)
        for i in range(n + 1):
            x = a[i]
            if not x:
                continue
            for j in range(n + 1 - i):
                y = b[j]
                if y:
                    out[i + j] += x * y
        return UniSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return UniSeries([_exact_div(c, other) for c in self._c])
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = UniSeries.one(self.order, unit=1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # analytic operations
    def reciprocal(self) -> "UniSeries":
        c0 = self._c[0]
        if not c0:
            raise SeriesDomainError("reciprocal of a series with zero constant term")
        a = self._c
        out = [_exact_div(1, c0)]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                if a[k]:
                    acc += a[k] * out[n - k]
            out.append(_exact_div(-acc, c0))
        return UniSeries(out)

    def derivative(self) -> "UniSeries":
        """Formal derivative; the result has truncation ``D - 1``."""
        if self.order == 0:
            return UniSeries([0])
        return UniSeries([n * self._c[n] for n in range(1, self.order + 1)])

    def log(self) -> "UniSeries":
        if self._c[0] != 1:
            raise SeriesDomainError("log needs constant term exactly 1")
        d = self.euler() * self.reciprocal()
        return UniSeries([0] + [_exact_div(d._c[n], n) for n in range(1, self.order + 1)])

    def exp(self) -> "UniSeries":
        if self._c[0] != 0:
            raise SeriesDomainError("exp needs zero constant term")
        a = self._c
        out = [1]
        for n in range(1, self.order + 1):
            acc = 0
            for k in range(1, n + 1):
                if a[k]:
                    acc += k * a[k] * out[n - k]
            out.append(_exact_div(acc, n))
        return UniSeries(out)

    def euler(self) -> "UniSeries":
        """``t d/dt`` applied termwise."""
        return UniSeries([n * c for n, c in enumerate(self._c)])

    def compose(self, inner: "UniSeries") -> "UniSeries":
        """``self(inner(t))``; ``inner`` must have zero constant term."""
        if inner._c[0] != 0:
            raise SeriesDomainError("composition needs inner series with zero constant term")
        n = min(self.order, inner.order)
        inner = UniSeries(inner._c[: n + 1])
        out = UniSeries([self._c[n]], n)
        for k in range(n - 1, -1, -1):
            out = out * inner + self._c[k]
        return out

    def revert(self) -> "UniSeries":
        """Compositional inverse by Lagrange inversion.

        ``[t^n] h = (1/n) [z^(n-1)] (z / f(z))^n``.
        """
        D = self.order
        if self._c[0] != 0:
            raise SeriesDomainError("revert needs f(0) = 0")
        if D < 1 or not self._c[1]:
            raise SeriesDomainError("revert needs f'(0) != 0")
        # z / f(z) = 1 / (f1 + f2 z + ...), truncated at z^(D-1)
        phi = UniSeries(self._c[1:]).reciprocal()
        out = [0]
        power = UniSeries.one(phi.order)
        for n in range(1, D + 1):
            power = power * phi
            out.append(_exact_div(power[n - 1], n))
        return UniSeries(out)


def series_revert(f: UniSeries) -> UniSeries:
    return f.revert()


# --------------------------------------------------------------------------
# bivariate
# --------------------------------------------------------------------------


def _norm_part(p):
    return None if not any(p) else tuple(p)


class BiSeries:
    """Series in ``u, v`` truncated at total degree ``order``.

    ``parts[d]`` is ``None`` (identically zero) or a tuple of ``d + 1``
    coefficients indexed by the power of ``u``.
    """

    __slots__ = ("_parts",)

    def __init__(self, parts, order: int | None = None):
        parts = list(parts)
        if order is not None:
            parts = (parts + [None] * (order + 1))[: order + 1]
        if not parts:
            raise ValueError("a series needs at least its constant term")
        norm = []
        for d, p in enumerate(parts):
            if p is None:
                norm.append(None)
                continue
            if len(p) != d + 1:
                raise ValueError(f"part {d} must have {d + 1} coefficients")
            norm.append(_norm_part(p))
        self._parts = tuple(norm)

    # construction
    @classmethod
    def from_terms(cls, terms: Mapping[tuple[int, int], object], order: int) -> "BiSeries":
        parts = [None] * (order + 1)
        for (i, j), c in terms.items():
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            d = i + j
            if d > order or not c:
                continue
            if parts[d] is None:
                parts[d] = [0] * (d + 1)
            parts[d][i] += c
        return cls(parts)

    @classmethod
    def zero(cls, order: int) -> "BiSeries":
        return cls([None] * (order + 1))

    @classmethod
    def one(cls, order: int, unit=1) -> "BiSeries":
        return cls([(unit,)], order)

    @classmethod
    def monomial(cls, i: int, j: int, order: int, c=1) -> "BiSeries":
        return cls.from_terms({(i, j): c}, order)

    @classmethod
    def from_g(cls, f: UniSeries, order: int) -> "BiSeries":
        """Embed ``f(g)`` with ``g = u**2``."""
        parts = [None] * (order + 1)
        for n in range(order // 2 + 1):
            c = f[n]
            if c:
                p = [0] * (2 * n + 1)
                p[2 * n] = c
                parts[2 * n] = p
        return cls(parts)

    @classmethod
    def from_h(cls, f: UniSeries, order: int) -> "BiSeries":
        """Embed ``f(h)`` with ``h = v**2``."""
        parts = [None] * (order + 1)
        for n in range(order // 2 + 1):
            c = f[n]
            if c:
                p = [0] * (2 * n + 1)
                p[0] = c
                parts[2 * n] = p
        return cls(parts)

    @classmethod
    def outer(cls, fg: UniSeries, fh: UniSeries, order: int) -> "BiSeries":
        """``fg(g) * fh(h)``, built directly from the coefficient grid."""
        parts = [None] * (order + 1)
        K = order // 2
        for m in range(K + 1):
            a = fg[m]
            if not a:
                continue
            for n in range(K + 1 - m):
                b = fh[n]
                if not b:
                    continue
                d = 2 * (m + n)
                if parts[d] is None:
                    parts[d] = [0] * (d + 1)
                parts[d][2 * m] += a * b
        return cls(parts)

    # access
    @property
    def order(self) -> int:
        return len(self._parts) - 1

    @property
    def parts(self) -> tuple:
        return self._parts

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        if i < 0 or j < 0:
            return 0
        d = i + j
        if d > self.order:
            raise TruncationError(f"total degree {d} beyond truncation {self.order}")
        p = self._parts[d]
        return 0 if p is None else p[i]

    def coeff(self, i: int, j: int) -> Fraction:
        """Exact coefficient of ``u**i v**j``, i.e. of ``g**(i/2) h**(j/2)``."""
        return as_rational(self[i, j])

    def terms(self) -> dict[tuple[int, int], object]:
        out = {}
        for d, p in enumerate(self._parts):
            if p is None:
                continue
            for i, c in enumerate(p):
                if c:
                    out[(i, d - i)] = c
        return out

    def constant(self):
        p = self._parts[0]
        return 0 if p is None else p[0]

    def truncate(self, order: int) -> "BiSeries":
        if order > self.order:
            raise TruncationError("cannot extend a truncated series")
        return BiSeries(self._parts[: order + 1])

    def is_zero(self) -> bool:
        return all(p is None for p in self._parts)

    def __eq__(self, other):
        if isinstance(other, BiSeries):
            return self._parts == other._parts
        return NotImplemented

    def __hash__(self):
        return hash(self._parts)

    def __repr__(self):
        terms = [f"{c}*u^{i}v^{j}" for (i, j), c in sorted(self.terms().items())]
        return f"BiSeries({' + '.join(terms) or '0'} + O(deg {self.order + 1}))"

    # ring operations
    def _coerce(self, other) -> "BiSeries":
        if isinstance(other, BiSeries):
            return other
        if isinstance(other, Number):
            return BiSeries.one(self.order, unit=other)
        raise TypeError(f"cannot combine BiSeries with {type(other).__name__}")

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        parts = []
        for d in range(n + 1):
            p, q = self._parts[d], o._parts[d]
            if p is None:
                parts.append(q)
            elif q is None:
                parts.append(p)
            else:
                parts.append([x + y for x, y in zip(p, q)])
        return BiSeries(parts)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries([None if p is None else [-c for c in p] for p in self._parts])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiSeries":
        return BiSeries([None if p is None else [x * c for x in p] for p in self._parts])

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        o = self._coerce(other)
        n = min(self.order, o.order)
        a, b = self._parts, o._parts
        acc = [None] * (n + 1)
        for d1 in range(n + 1):
            p = a[d1]
            if p is None:
                continue
            for d2 in range(n + 1 - d1):
                q = b[d2]
                if q is None:
                    continue
                r = _conv(p, q)
                d = d1 + d2
                if acc[d] is None:
                    acc[d] = r
                else:
                    t = acc[d]
                    for k, x in enumerate(r):
                        t[k] += x
        return BiSeries(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Number):
            return BiSeries([None if p is None else [_exact_div(x, other) for x in p]
                             for p in self._parts])
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def times_uv(self, k: int = 1) -> "BiSeries":
        """Multiply by ``(u v)**k``, keeping the truncation order."""
        parts = [None] * (self.order + 1)
        for d, p in enumerate(self._parts):
            if p is None or d + 2 * k > self.order:
                continue
            parts[d + 2 * k] = (0,) * k + p + (0,) * k
        return BiSeries(parts)

    # analytic operations
    def reciprocal(self) -> "BiSeries":
        c0 = self.constant()
        if not c0:
            raise SeriesDomainError("reciprocal of a series with zero constant term")
        a = self._parts
        n = self.order
        out = [(_exact_div(1, c0),)]
        for d in range(1, n + 1):
            acc = [0] * (d + 1)
            nonzero = False
            for k in range(1, d + 1):
                p, q = a[k], out[d - k]
                if p is None or q is None:
                    continue
                nonzero = True
                for idx, x in enumerate(_conv(p, q)):
                    acc[idx] += x
            if nonzero and any(acc):
                out.append(tuple(_exact_div(-x, c0) for x in acc))
            else:
                out.append(None)
        return BiSeries(out)

    def euler(self) -> "BiSeries":
        """Total-degree Euler operator ``u d/du + v d/dv``."""
        return BiSeries([None if p is None else [d * c for c in p]
                         for d, p in enumerate(self._parts)])

    def log(self) -> "BiSeries":
        if self.constant() != 1:
            raise SeriesDomainError("log needs constant term exactly 1")
        # E(log f) = E(f) / f, then divide each homogeneous part by its degree
        q = self.euler() * self.reciprocal()
        parts = [None]
        for d in range(1, self.order + 1):
            p = q._parts[d]
            parts.append(None if p is None else [_exact_div(c, d) for c in p])
        return BiSeries(parts)

    def exp(self) -> "BiSeries":
        if self.constant() != 0:
            raise SeriesDomainError("exp needs zero constant term")
        a = self._parts
        out = [(1,)]
        for d in range(1, self.order + 1):
            acc = [0] * (d + 1)
            for k in range(1, d + 1):
                p, q = a[k], out[d - k]
                if p is None or q is None:
                    continue
                for idx, x in enumerate(_conv(p, q)):
                    acc[idx] += k * x
            out.append(tuple(_exact_div(x, d) for x in acc) if any(acc) else None)
        return BiSeries(out)

    def swap(self) -> "BiSeries":
        """Exchange ``u`` and ``v``."""
        return BiSeries([None if p is None else p[::-1] for p in self._parts])

    def diagonal(self) -> UniSeries:
        """Specialize ``v := u`` and return the result as a series in ``g = u**2``.

        Odd total degrees must vanish.
        """
        out = []
        for d, p in enumerate(self._parts):
            s = 0 if p is None else sum(p)
            if d % 2:
                if s:
                    raise SeriesDomainError("odd total degree survives v := u")
                continue
            out.append(s)
        return UniSeries(out)

    def stratum(self, area: int) -> tuple:
        """Coefficients of ``g**(area - p/2) h**(p/2)`` for ``p = 0..2*area``."""
        d = 2 * area
        if d > self.order:
            raise TruncationError(f"area {area} needs truncation >= {d}, have {self.order}")
        p = self._parts[d]
        if p is None:
            return (0,) * (d + 1)
        return tuple(reversed(p))

    def map_coeffs(self, fn) -> "BiSeries":
        return BiSeries([None if p is None else [fn(c) for c in p] for p in self._parts])


def series_add(a: BiSeries, b: BiSeries) -> BiSeries:
    return a + b


def series_mul(a: BiSeries, b: BiSeries) -> BiSeries:
    return a * b


def series_log(f):
    return f.log()


def series_exp(f):
    return f.exp()


def series_reciprocal(f):
    return f.reciprocal()


def coeff(f: BiSeries, i: int, j: int) -> Fraction:
    return f.coeff(i, j)
