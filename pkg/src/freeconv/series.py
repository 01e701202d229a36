"""Exact truncated series in w = 1/z.

A :class:`TailSeries` stores rational coefficients c0..cN of the value
c0 + c1/z + ... + cN/z**N.  The transforms used throughout the package
(G, F - z and K) all have this shape near infinity, and the identities
between them hold coefficient by coefficient, so everything here is done
over ``fractions.Fraction``.  Floating point only appears in the analytic
evaluators of :mod:`freeconv.measures`.

Series are immutable; every operation returns a fresh series truncated at
the common order of its inputs.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ZeroLeadingCoefficient

Rational = int | Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class TailSeries:
    """Immutable truncated series in 1/z with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        coeffs = tuple(_frac(c) for c in coeffs)
        if not coeffs:
            raise ValueError("a series needs at least its constant term")
        self.coeffs = coeffs

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, order: int) -> "TailSeries":
        return cls((Fraction(0),) * (order + 1))

    @classmethod
    def constant(cls, value: Rational, order: int) -> "TailSeries":
        return cls((_frac(value),) + (Fraction(0),) * order)

    def truncate(self, order: int) -> "TailSeries":
        if order >= self.order:
            return self
        return TailSeries(self.coeffs[: order + 1])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        return f"TailSeries({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TailSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "TailSeries":
        return TailSeries(tuple(-c for c in self.coeffs))

    def __add__(self, other: "TailSeries") -> "TailSeries":
        n = min(self.order, other.order)
        return TailSeries(tuple(self.coeffs[k] + other.coeffs[k] for k in range(n + 1)))

    def __sub__(self, other: "TailSeries") -> "TailSeries":
        n = min(self.order, other.order)
        return TailSeries(tuple(self.coeffs[k] - other.coeffs[k] for k in range(n + 1)))

    def __mul__(self, other) -> "TailSeries":
        if isinstance(other, TailSeries):
            n = min(self.order, other.order)
            a, b = self.coeffs, other.coeffs
            out = []
            for k in range(n + 1):
                out.append(sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)))
            return TailSeries(out)
        return TailSeries(tuple(c * _frac(other) for c in self.coeffs))

    def __rmul__(self, other) -> "TailSeries":
        return self.__mul__(other)

    def reciprocal(self) -> "TailSeries":
        """Series b with self * b == 1 up to the truncation order."""
        a = self.coeffs
        if a[0] == 0:
            raise ZeroLeadingCoefficient("cannot invert a series with zero constant term")
        inv0 = Fraction(1) / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            acc = Fraction(0)
            for k in range(1, n + 1):
                acc += a[k] * out[n - k]
            out.append(-inv0 * acc)
        return TailSeries(out)


def substitute_into_shifted(outer: TailSeries, inner: TailSeries) -> TailSeries:
    """Expand outer evaluated at z - inner(z), as a series in 1/z.

    ``outer`` is read as a function of 1/z, so the result is the expansion
    of outer(1/u) with u = z - inner(z).  Since inner(z)/z has no constant
    term in w, 1/u = (1/z) * sum_k (inner(z)/z)**k truncates cleanly at the
    common order.
    """
    n = min(outer.order, inner.order)
    outer = outer.truncate(n)
    inner = inner.truncate(n)
    if n == 0:
        return TailSeries.constant(outer.coeffs[0], 0)
    one = TailSeries.constant(1, n)
    scaled = TailSeries((Fraction(0),) + inner.coeffs[:n])  # inner(z)/z
    geom = (one - scaled).reciprocal()
    t = TailSeries((Fraction(0),) + geom.coeffs[:n])  # 1/(z - inner(z))
    acc = TailSeries.constant(outer.coeffs[n], n)
    for k in range(n - 1, -1, -1):
        acc = acc * t + TailSeries.constant(outer.coeffs[k], n)
    return acc


def moments_to_F(moments: Sequence[Rational]) -> TailSeries:
    """F(z) - z as a TailSeries, from the moments m1..mN (m0 = 1 implied).

    Computed as the reciprocal of z*G(z) = 1 + m1*w + m2*w**2 + ...; the
    constant term of the result is -m1 and the series has order N - 1.
    """
    m = tuple(_frac(x) for x in moments)
    if not m:
        raise ValueError("need at least one moment")
    zg = TailSeries((Fraction(1),) + m)
    f_over_z = zg.reciprocal()  # F(z)/z = 1/(z*G(z))
    return TailSeries(f_over_z.coeffs[1:])


def F_to_moments(f: TailSeries) -> tuple[Fraction, ...]:
    """Moments m1..mN of the measure whose F(z) - z is the given series.

    Exact inverse of :func:`moments_to_F` at every order.
    """
    zg = TailSeries((Fraction(1),) + f.coeffs).reciprocal()
    return zg.coeffs[1:]
