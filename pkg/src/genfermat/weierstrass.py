"""Canonical series, Weierstrass gaps and Pluecker bookkeeping.

The canonical linear system of a generalized Fermat curve is cut out by
forms of degree r = (n-1)(k-1) - 2.  Modulo the defining equations every
such form is a unique combination of monomials whose exponents of
x_2, ..., x_n are below k (the k-th powers of those variables are linear in
x_0^k, x_1^k).  Vanishing orders of the canonical sections at a point are
read off by restricting these monomials to a local frame and row-reducing.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .curve import CurveParams, FixedPointDescriptor, degree, genus, relocate
from .errors import (
    ConsistencyFailure,
    NotApplicable,
    PrecisionExhausted,
    TheoremViolation,
)
from .local import _adaptive, fixed_point_frame, initial_truncation
from .series import TruncatedSeries

__all__ = [
    "MonomialBasis",
    "PluckerTable",
    "WeierstrassReport",
    "canonical_degree",
    "classic_weight",
    "gap_sequence",
    "hilbert_function",
    "monomial_basis",
    "plucker_table",
    "q_dimension",
    "span_orders",
    "total_ramification",
    "weight_lower_bound",
]


@dataclass(frozen=True)
class MonomialBasis:
    degree: int
    exponent_vectors: tuple

    def __len__(self) -> int:
        return len(self.exponent_vectors)


@dataclass(frozen=True)
class WeierstrassReport:
    gaps: tuple
    weight: int
    bound: Optional[int]
    bound_tight: Optional[bool]

    def to_dict(self) -> dict:
        return {
            "gaps": list(self.gaps),
            "weight": self.weight,
            "bound": self.bound,
            "bound_tight": self.bound_tight,
        }


@dataclass(frozen=True)
class PluckerTable:
    ranks: tuple  # d_{-1}, d_0, ..., d_n
    totals: tuple  # b_1, ..., b_{n-1}

    def to_dict(self) -> dict:
        return {"ranks": list(self.ranks), "totals": list(self.totals)}


def canonical_degree(curve: CurveParams) -> int:
    return (curve.n - 1) * (curve.k - 1) - 2


def monomial_basis(curve: CurveParams, m: int) -> MonomialBasis:
    """Degree-``m`` monomials with exponents of x_2..x_n below k, lexicographic."""
    k, n = curve.k, curve.n
    if m < 0:
        return MonomialBasis(m, ())
    vectors = []
    for tail in itertools.product(range(min(k, m + 1)), repeat=n - 1):
        rest = m - sum(tail)
        if rest < 0:
            continue
        for a0 in range(rest + 1):
            vectors.append((a0, rest - a0, *tail))
    vectors.sort()
    return MonomialBasis(m, tuple(vectors))


def hilbert_function(k: int, n: int, m: int) -> int:
    """Coefficient of t^m in (1 + t + ... + t^(k-1))^(n-1) / (1 - t)^2."""
    if m < 0:
        return 0
    num = [1]
    for _ in range(n - 1):
        nxt = [0] * (len(num) + k - 1)
        for i, c in enumerate(num):
            for d in range(k):
                nxt[i + d] += c
        num = nxt
    # 1/(1-t)^2 = sum (i+1) t^i
    return sum(c * (m - i + 1) for i, c in enumerate(num) if i <= m)


def q_dimension(k: int, n: int, j: int) -> int:
    """Dimension of the x_1^j-graded piece of the degree-r forms (n >= 3)."""
    if n < 3:
        raise NotApplicable("graded dimension formula needs n >= 3")
    if not 0 <= j <= k - 1:
        raise ValueError("need 0 <= j <= k-1")
    twice = k ** (n - 2) * (n * (k - 1) - 2 - 2 * j)
    assert twice % 2 == 0
    return twice // 2 + (1 if j == k - 1 else 0)


def weight_lower_bound(k: int, n: int) -> int:
    if n < 3:
        raise NotApplicable("the fixed-point weight bound needs n >= 3; use classic_weight")
    num = (k - 1) * (k ** (n - 1) - 2) * (k ** n + k ** (n - 1) - 12)
    if num % 24:
        raise AssertionError(f"weight bound for (k={k}, n={n}) is not an integer")
    return num // 24


def classic_weight(k: int) -> int:
    if k < 4:
        raise NotApplicable("classic Fermat weight needs k >= 4")
    num = (k - 1) * (k - 2) * (k - 3) * (k + 4)
    assert num % 24 == 0
    return num // 24


def total_ramification(k: int, n: int) -> tuple:
    """Summed b_1 and b_l (l >= 2) over F; the second entry is None when n = 2."""
    size = (n + 1) * k ** (n - 1)
    return size * (k - 2), (size * (k - 1) if n >= 3 else None)


def closed_form_totals(k: int, n: int) -> list[int]:
    b1, rest = total_ramification(k, n)
    return [b1] + [rest] * (n - 2)


def plucker_table(curve: CurveParams, b_totals: Sequence[int]) -> PluckerTable:
    """Ranks d_{-1}..d_n from d_{l+1} = 2 d_l - d_{l-1} + 2g - 2 - b_l.

    Seeds are d_{-1} = 0 and d_0 = deg; the l = 0 step uses b_0 = 0.  Raises
    :class:`ConsistencyFailure` unless d_n = 0 and every rank is
    non-negative.
    """
    n = curve.n
    if len(b_totals) != n - 1:
        raise ValueError(f"expected {n - 1} totals, got {len(b_totals)}")
    g = genus(curve)
    b = [0, *b_totals]
    d = [0, degree(curve)]
    for l in range(n):
        d.append(2 * d[-1] - d[-2] + 2 * g - 2 - b[l])
    table = PluckerTable(tuple(d), tuple(b_totals))
    if d[-1] != 0 or min(d) < 0:
        raise ConsistencyFailure(f"Pluecker ranks {d} for {curve} with totals {list(b_totals)}", table)
    return table


def _monomial_series(coords: Sequence[TruncatedSeries], vectors) -> dict:
    memo = {}
    N = coords[0].truncation

    def get(a):
        if a in memo:
            return memo[a]
        if not any(a):
            s = TruncatedSeries.constant(1, N)
        else:
            # Strip x_0 first (it is 1 on the frame), then the highest variable.
            if a[0]:
                parent = (0, *a[1:])
                s = get(parent)
            else:
                j = max(i for i, e in enumerate(a) if e)
                parent = a[:j] + (a[j] - 1,) + a[j + 1:]
                s = get(parent) * coords[j]
        memo[a] = s
        return s

    return {a: get(a) for a in vectors}


def _int_row(series: TruncatedSeries) -> list[int]:
    cs = series.coefficients
    den = math.lcm(*(c.denominator for c in cs))
    return [c.numerator * (den // c.denominator) for c in cs]


def _first_nonzero(row) -> Optional[int]:
    for i, c in enumerate(row):
        if c:
            return i
    return None


def span_orders(series: Sequence[TruncatedSeries], labels: Optional[Sequence] = None) -> list[int]:
    """Distinct vanishing orders attained by the span of ``series``.

    Order-pivoted elimination: repeatedly take the row of lowest order
    (ties broken by label), record its order, and clear that coefficient
    from every other row.  Rows are kept as primitive integer vectors.
    Raises :class:`PrecisionExhausted` if a row becomes zero within the
    stored precision, since the family is then not shown to be independent.
    """
    if labels is None:
        labels = list(range(len(series)))
    active = [(lab, _int_row(s)) for lab, s in zip(labels, series)]
    orders = []
    while active:
        keyed = []
        for lab, row in active:
            o = _first_nonzero(row)
            if o is None:
                raise PrecisionExhausted(f"row {lab!r} reduced to zero within the stored precision")
            keyed.append((o, lab, row))
        keyed.sort(key=lambda t: (t[0], t[1]))
        o, lab, piv = keyed[0]
        orders.append(o)
        pv = piv[o]
        nxt = []
        for o2, lab2, row in keyed[1:]:
            if o2 == o:
                rv = row[o]
                row = [pv * x - rv * y for x, y in zip(row, piv)]
                g = math.gcd(*row)
                if g > 1:
                    row = [x // g for x in row]
            nxt.append((lab2, row))
        active = nxt
    return orders


def gap_sequence(
    curve: CurveParams,
    p: FixedPointDescriptor | int,
    truncation: Optional[int] = None,
    anchors: Optional[Sequence[int]] = None,
    check: bool = True,
) -> WeierstrassReport:
    """Weierstrass gaps and weight at a point of F.

    Canonical sections are degree-r forms; restricted to the frame at p each
    monomial is a series up to a constant product of k-th roots.  Rescaling
    the members of a spanning family does not change its span, so those
    constants are dropped.  Gaps are the attained orders plus one.
    """
    g = genus(curve)
    r = canonical_degree(curve)
    relocated = relocate(curve, p, anchors)
    basis = monomial_basis(curve, r)
    if len(basis) != g:
        raise TheoremViolation(f"{len(basis)} canonical monomials for genus {g}")

    def build(N):
        frame = fixed_point_frame(relocated, N)
        table = _monomial_series(frame.coordinate_series, basis.exponent_vectors)
        vectors = basis.exponent_vectors
        return span_orders([table[a] for a in vectors], vectors)

    start = truncation or max(4 * g, initial_truncation(curve))
    orders, _ = _adaptive(build, start)
    gaps = tuple(o + 1 for o in orders)
    weight = sum(a - i for i, a in enumerate(gaps, start=1))
    if curve.n >= 3:
        bound = weight_lower_bound(curve.k, curve.n)
    else:
        bound = classic_weight(curve.k)
    report = WeierstrassReport(gaps, weight, bound, weight == bound)
    if check:
        if gaps[0] != 1 or gaps[-1] > 2 * g - 1:
            raise TheoremViolation(f"gap sequence {gaps} out of range for genus {g}", report)
        if curve.n >= 3 and weight < bound:
            raise TheoremViolation(f"weight {weight} below bound {bound} for {curve}", report)
        if curve.n == 2 and weight != bound:
            raise TheoremViolation(f"weight {weight} differs from classic value {bound}", report)
    return report
