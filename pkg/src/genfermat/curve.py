"""Generalized Fermat curves of type (k, n) with rational parameters.

The curve lives in P^n and is cut out by

    x_0^k + x_1^k + x_2^k = 0,
    lam_i x_0^k + x_1^k + x_{i+2}^k = 0    (1 <= i <= n-2).

The map [x] -> [-x_1^k : x_0^k] to the projective line is the quotient by
the group generated by the coordinate scalings x_j -> w x_j (w^k = 1).  It
branches over infinity, 0, 1, lam_1, ..., lam_{n-2}; the fibre over the
j-th branch value is the locus x_j = 0.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidCurve
from .series import as_rational

__all__ = [
    "INFINITY",
    "CurveParams",
    "FixedPointDescriptor",
    "branch_set",
    "degree",
    "fixed_points",
    "genus",
    "mobius_normalizer",
    "relocate",
    "validate",
]

#: Point at infinity on the quotient line.
INFINITY = None


@dataclass(frozen=True)
class CurveParams:
    k: int
    n: int
    lambdas: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(as_rational(x) for x in self.lambdas))

    @classmethod
    def from_record(cls, record: dict) -> "CurveParams":
        """Build from ``{"k": int, "n": int, "lambdas": ["p/q", ...]}``."""
        try:
            k = record["k"]
            n = record["n"]
        except KeyError as exc:
            raise InvalidCurve("malformed", f"missing field {exc.args[0]!r}") from None
        if not isinstance(k, int) or not isinstance(n, int) or isinstance(k, bool) or isinstance(n, bool):
            raise InvalidCurve("malformed", "k and n must be integers")
        try:
            lambdas = tuple(as_rational(x) for x in record.get("lambdas", ()))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InvalidCurve("malformed", f"bad lambda value ({exc})") from None
        return cls(k, n, lambdas)

    def to_record(self) -> dict:
        return {"k": self.k, "n": self.n, "lambdas": [format_rational(x) for x in self.lambdas]}

    def __str__(self) -> str:
        lam = ",".join(format_rational(x) for x in self.lambdas)
        return f"(k={self.k}, n={self.n}, lambdas=[{lam}])"


@dataclass(frozen=True)
class FixedPointDescriptor:
    """A point of F, named combinatorially.

    ``vanishing_coordinate`` is the j with x_j = 0.  Scaling the first
    nonvanishing coordinate to 1 leaves n-1 coordinates, each a k-th root of
    a fixed value; ``root_selector`` records which root (a residue mod k,
    i.e. a power of exp(2 pi i / k)) each one takes.
    """

    vanishing_coordinate: int
    root_selector: tuple = field(default=())


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def validate(curve: CurveParams) -> None:
    """Raise :class:`InvalidCurve` unless ``curve`` defines a smooth curve of genus >= 2."""
    k, n = curve.k, curve.n
    if k < 2 or n < 2:
        raise InvalidCurve("malformed", "need k >= 2 and n >= 2")
    if len(curve.lambdas) != n - 2:
        raise InvalidCurve("malformed", f"expected {n - 2} lambdas, got {len(curve.lambdas)}")
    for lam in curve.lambdas:
        if lam == 0 or lam == 1:
            raise InvalidCurve("forbidden-lambda-value", f"lambda = {format_rational(lam)}")
    if len(set(curve.lambdas)) != len(curve.lambdas):
        raise InvalidCurve("duplicate-lambda", ", ".join(map(format_rational, curve.lambdas)))
    if (n - 1) * (k - 1) <= 2:
        raise InvalidCurve("genus-below-two", f"genus {genus(curve)}")


def genus(curve: CurveParams) -> int:
    k, n = curve.k, curve.n
    twice = k ** (n - 1) * ((n - 1) * (k - 1) - 2) + 2
    assert twice % 2 == 0
    return twice // 2


def degree(curve: CurveParams) -> int:
    return curve.k ** (curve.n - 1)


def branch_set(curve: CurveParams) -> list:
    """Branch values indexed by coordinate: ``[INFINITY, 0, 1, lam_1, ...]``."""
    return [INFINITY, Fraction(0), Fraction(1), *curve.lambdas]


def fixed_points(curve: CurveParams) -> list[FixedPointDescriptor]:
    k, n = curve.k, curve.n
    return [
        FixedPointDescriptor(j, tail)
        for j in range(n + 1)
        for tail in itertools.product(range(k), repeat=n - 1)
    ]


def mobius_normalizer(p, a, b):
    """Return the Moebius map sending ``p, a, b`` to ``0, INFINITY, 1``.

    Arguments and values are Fractions or ``INFINITY``.  The map is the
    cross ratio ``(mu - p)(b - a) / ((mu - a)(b - p))`` with factors that
    involve infinity dropped in pairs.
    """
    if len({p, a, b}) != 3:
        raise ValueError("normalizer needs three distinct points")

    def image(mu):
        if mu == p:
            return Fraction(0)
        if mu == a:
            return INFINITY
        num = Fraction(1)
        den = Fraction(1)
        if mu is INFINITY:
            # (mu - p)/(mu - a) -> 1
            pass
        else:
            if p is not INFINITY:
                num *= mu - p
            if a is not INFINITY:
                den *= mu - a
        if b is not INFINITY:
            if a is not INFINITY:
                num *= b - a
            if p is not INFINITY:
                den *= b - p
        return num / den

    return image


def relocate(
    curve: CurveParams,
    p: FixedPointDescriptor | int,
    anchors: Optional[Sequence[int]] = None,
) -> CurveParams:
    """Projectively equivalent curve on which ``p`` lies over branch value 0.

    ``anchors`` picks which two other branch positions go to infinity and 1;
    by default the first two remaining positions in canonical order.  The
    remaining branch values, in canonical order, become the new lambdas.
    """
    j = p.vanishing_coordinate if isinstance(p, FixedPointDescriptor) else int(p)
    if not 0 <= j <= curve.n:
        raise ValueError(f"coordinate index {j} out of range")
    branches = branch_set(curve)
    rest = [i for i in range(curve.n + 1) if i != j]
    if anchors is None:
        ia, ib = rest[0], rest[1]
    else:
        ia, ib = anchors
        if ia == ib or ia not in rest or ib not in rest:
            raise ValueError(f"invalid anchors {anchors!r} for coordinate {j}")
    image = mobius_normalizer(branches[j], branches[ia], branches[ib])
    new_lambdas = tuple(image(branches[i]) for i in rest if i not in (ia, ib))
    return CurveParams(curve.k, curve.n, new_lambdas)
