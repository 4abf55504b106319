"""Exact rational numbers and dense truncated power series.

Coefficients are :class:`fractions.Fraction`, so every zero test is exact.
A series carries its truncation ``N``: coefficients of ``z^0 .. z^(N-1)``
are known, everything from ``z^N`` on is unknown.  Binary operations
never extend precision; the result is truncated to the smaller operand.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import NonzeroConstantTerm, TruncationUnderflow

Rational = Fraction

__all__ = [
    "Rational",
    "TruncatedSeries",
    "as_rational",
    "generalized_binomial",
    "kth_root_unit_series",
    "series_add",
    "series_derivative",
    "series_mul",
    "series_order",
    "series_scale",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently inject rounding error.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _scaled(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


class TruncatedSeries:
    """Immutable dense power series ``sum c_i z^i`` known modulo ``z^N``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable, truncation: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if truncation is None:
            truncation = len(cs)
        if truncation < 1:
            raise ValueError("truncation must be at least 1")
        if len(cs) > truncation:
            cs = cs[:truncation]
        else:
            cs.extend([Fraction(0)] * (truncation - len(cs)))
        self._coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "TruncatedSeries":
        obj = object.__new__(cls)
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, truncation: int) -> "TruncatedSeries":
        return cls((), truncation)

    @classmethod
    def constant(cls, value, truncation: int) -> "TruncatedSeries":
        return cls((value,), truncation)

    @classmethod
    def monomial(cls, exponent: int, truncation: int, coeff=1) -> "TruncatedSeries":
        cs = [0] * truncation
        if exponent < truncation:
            cs[exponent] = coeff
        return cls(cs, truncation)

    @property
    def coefficients(self) -> tuple:
        return self._coeffs

    @property
    def truncation(self) -> int:
        return len(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, i):
        return self._coeffs[i]

    def __iter__(self):
        return iter(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self._coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        return f"TruncatedSeries({body} + O(z^{self.truncation}))"

    def truncate(self, truncation: int) -> "TruncatedSeries":
        if truncation > self.truncation:
            raise ValueError("cannot raise the truncation of a series")
        return TruncatedSeries._raw(self._coeffs[:truncation])

    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_add(self, other)
        return series_add(self, TruncatedSeries.constant(other, self.truncation))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw(tuple(-c for c in self._coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = TruncatedSeries.constant(1, self.truncation)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def derivative(self) -> "TruncatedSeries":
        return series_derivative(self)

    def order(self) -> int | None:
        return series_order(self)


def generalized_binomial(k: int, i: int) -> Fraction:
    """Coefficient of ``t^i`` in ``(1 + t)^(1/k)``."""
    if k < 2 or i < 0:
        raise ValueError("need k >= 2 and i >= 0")
    alpha = Fraction(1, k)
    num = Fraction(1)
    for m in range(i):
        num *= alpha - m
    return num / math.factorial(i)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.truncation, b.truncation)
    return TruncatedSeries._raw(tuple(x + y for x, y in zip(a._coeffs[:n], b._coeffs[:n])))


def series_scale(a: TruncatedSeries, c) -> TruncatedSeries:
    c = as_rational(c)
    if not c:
        return TruncatedSeries.zero(a.truncation)
    return TruncatedSeries._raw(tuple(x * c for x in a._coeffs))


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the smaller operand truncation."""
    n = min(a.truncation, b.truncation)
    # Convolve over integers with a common denominator per operand; Fraction
    # arithmetic inside the double loop is an order of magnitude slower.
    ai, da = _scaled(a._coeffs[:n])
    bi, db = _scaled(b._coeffs[:n])
    out = [0] * n
    nz_b = [(j, y) for j, y in enumerate(bi) if y]
    for i, x in enumerate(ai):
        if not x:
            continue
        lim = n - i
        for j, y in nz_b:
            if j >= lim:
                break
            out[i + j] += x * y
    den = da * db
    return TruncatedSeries._raw(tuple(Fraction(c, den) for c in out))


def series_derivative(a: TruncatedSeries) -> TruncatedSeries:
    if a.truncation < 2:
        raise TruncationUnderflow("derivative of a series with truncation 1")
    cs = a._coeffs
    return TruncatedSeries._raw(tuple(i * cs[i] for i in range(1, len(cs))))


def series_order(a: TruncatedSeries) -> int | None:
    """Index of the first nonzero coefficient.

    Returns ``None`` when every stored coefficient vanishes: the order is then
    not determined at this truncation (the series might be identically zero).
    """
    for i, c in enumerate(a._coeffs):
        if c:
            return i
    return None


def kth_root_unit_series(u: TruncatedSeries, k: int) -> TruncatedSeries:
    """Principal branch of ``(1 + u)^(1/k)`` for ``u(0) = 0``.

    Uses the linear recurrence obtained from ``(1+u) y' = (1/k) u' y``
    instead of summing ``binom(1/k, i) u^i``; both give the same truncated
    series, the recurrence in quadratic rather than cubic time.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if u[0] != 0:
        raise NonzeroConstantTerm("kth_root_unit_series needs u(0) = 0")
    n = u.truncation
    f = u._coeffs
    alpha = Fraction(1, k)
    nz = [(j, f[j]) for j in range(1, n) if f[j]]
    y = [Fraction(0)] * n
    y[0] = Fraction(1)
    for m in range(1, n):
        acc = Fraction(0)
        for j, fj in nz:
            if j > m:
                break
            acc += ((alpha + 1) * j - m) * fj * y[m - j]
        y[m] = acc / m
    return TruncatedSeries._raw(tuple(y))
