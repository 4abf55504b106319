"""Local expansions, Wronskian orders and ramification of associated curves.

A local frame is the list of coordinate functions of the embedding near a
point, expanded in a local parameter.  Any coordinate may be multiplied by a
nonzero constant without changing a single vanishing order computed here:
such a constant scales one column of every minor.  That is what allows the
k-th root prefactors of the fixed-point coordinates (which are not rational)
to be dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .curve import (
    CurveParams,
    FixedPointDescriptor,
    branch_set,
    relocate,
)
from .errors import (
    BranchCollision,
    NegativeIndex,
    PrecisionCapExceeded,
    PrecisionExhausted,
    TheoremViolation,
)
from .series import TruncatedSeries, as_rational, kth_root_unit_series, series_order

__all__ = [
    "PRECISION_CAP",
    "LocalFrame",
    "OsculationReport",
    "analyze_generic_point",
    "analyze_point",
    "expected_ramification",
    "fixed_point_frame",
    "generic_point_frame",
    "initial_truncation",
    "ramification_from_orders",
    "wronskian_orders",
]

PRECISION_CAP = 2 ** 14


@dataclass(frozen=True)
class LocalFrame:
    """Coordinate series of the embedding around one point.

    Each coordinate has been divided by its constant k-th root prefactor, so
    every series starts with 1 except the one vanishing at the base point.
    ``base`` is ``"fixed-point"`` or ``("generic", mu0)``.
    """

    coordinate_series: tuple
    base: object = "fixed-point"
    prefactors_dropped: bool = True

    @property
    def truncation(self) -> int:
        return min(s.truncation for s in self.coordinate_series)

    def rescaled(self, factors: Sequence) -> "LocalFrame":
        return LocalFrame(
            tuple(s * as_rational(c) for s, c in zip(self.coordinate_series, factors)),
            self.base,
            self.prefactors_dropped,
        )


@dataclass(frozen=True)
class OsculationReport:
    wedge_orders: tuple
    ramification: tuple
    alpha: tuple
    hyperosculating: bool

    def to_dict(self) -> dict:
        return {
            "wedge_orders": list(self.wedge_orders),
            "ramification": list(self.ramification),
            "alpha": list(self.alpha),
            "hyperosculating": self.hyperosculating,
        }


def initial_truncation(curve: CurveParams) -> int:
    return max(4 * curve.k * (curve.n + 1), 64)


def _lam_hat(curve: CurveParams, i: int) -> Fraction:
    return Fraction(1) if i == 0 else curve.lambdas[i - 1]


def fixed_point_frame(relocated: CurveParams, truncation: int) -> LocalFrame:
    """Frame at a point with x_1 = 0, local parameter z = x_1 / x_0.

    On that chart x_{j+1}^k = -(lam_{j-1} + z^k) with lam_0 = 1, so after
    dividing by a k-th root of -lam_{j-1} the coordinate is the principal
    root of 1 + z^k / lam_{j-1}.
    """
    k, n, N = relocated.k, relocated.n, truncation
    coords = [TruncatedSeries.constant(1, N), TruncatedSeries.monomial(1, N)]
    for j in range(1, n):
        u = TruncatedSeries.monomial(k, N, 1 / _lam_hat(relocated, j - 1))
        coords.append(kth_root_unit_series(u, k))
    return LocalFrame(tuple(coords), "fixed-point")


def generic_point_frame(curve: CurveParams, mu0, truncation: int) -> LocalFrame:
    """Frame over a non-branch rational value ``mu0`` of the quotient line.

    The local parameter is s = mu - mu0.  Coordinate j (j >= 1) has
    x_j^k proportional to mu - beta_j, hence to 1 + s / (mu0 - beta_j).
    """
    mu0 = as_rational(mu0)
    branches = branch_set(curve)
    if mu0 in branches[1:]:
        raise BranchCollision(f"{mu0} is a branch value")
    N = truncation
    coords = [TruncatedSeries.constant(1, N)]
    for beta in branches[1:]:
        u = TruncatedSeries.monomial(1, N, 1 / (mu0 - beta))
        coords.append(kth_root_unit_series(u, curve.k))
    return LocalFrame(tuple(coords), ("generic", mu0))


def _wronskian_rows(frame: LocalFrame, max_l: int) -> list[list[TruncatedSeries]]:
    rows = [list(frame.coordinate_series)]
    for _ in range(max_l):
        rows.append([s.derivative() for s in rows[-1]])
    return rows


def wronskian_orders(frame: LocalFrame, max_l: Optional[int] = None) -> list[int]:
    """Vanishing orders of v, v ^ v', ..., v ^ v' ^ ... ^ v^(max_l).

    The order of a wedge is the minimum order over its Pluecker coordinates,
    i.e. over all (l+1)-column minors of the rows v, v', ..., v^(l).  Minors
    are built by Laplace expansion along the last row, reusing every smaller
    minor, so all levels come out of one sweep.
    """
    ncols = len(frame.coordinate_series)
    if max_l is None:
        max_l = ncols - 1
    if not 0 <= max_l < ncols:
        raise ValueError("max_l out of range")
    if frame.truncation <= max_l:
        raise PrecisionExhausted("truncation too small for the requested derivatives")
    rows = _wronskian_rows(frame, max_l)
    orders = []
    prev = {(): None}
    for level in range(max_l + 1):
        row = rows[level]
        cur = {}
        best = None
        for cols in combinations(range(ncols), level + 1):
            acc = None
            for idx, c in enumerate(cols):
                if not any(row[c]):
                    continue
                rest = cols[:idx] + cols[idx + 1:]
                sub = prev[rest]
                if sub is None and rest:
                    continue
                term = row[c] if not rest else row[c] * sub
                if (level + idx) % 2:
                    term = -term
                acc = term if acc is None else acc + term
            if acc is not None and not any(acc):
                acc = None
            cur[cols] = acc
            if acc is not None:
                o = series_order(acc)
                best = o if best is None else min(best, o)
        if best is None:
            raise PrecisionExhausted(f"every wedge minor vanishes to the stored precision at level {level}")
        orders.append(best)
        prev = cur
    return orders


def ramification_from_orders(orders: Sequence[int]) -> OsculationReport:
    """Second differences of wedge orders give the ramification indices.

    With normal-form exponents e_i the wedge orders are sum_{i<=l}(e_i - i),
    so ord_{l+1} - 2 ord_l + ord_{l-1} = e_{l+1} - e_l - 1 = alpha_{l+1}.
    """
    orders = [int(o) for o in orders]
    if len(orders) < 2:
        raise ValueError("need wedge orders for at least l = 0, 1")
    padded = [0, *orders]
    b = []
    for l in range(len(orders) - 1):
        d2 = padded[l + 2] - 2 * padded[l + 1] + padded[l]
        if d2 < 0:
            raise NegativeIndex(f"negative second difference at l={l}: orders {orders}")
        b.append(d2)
    return OsculationReport(
        wedge_orders=tuple(orders),
        ramification=tuple(b),
        alpha=tuple(b),
        hyperosculating=sum(b[1:]) >= 1,
    )


def expected_ramification(k: int, n: int) -> tuple:
    """Closed-form indices (b_0, ..., b_{n-1}) at every point of F."""
    return (0, k - 2, *([k - 1] * (n - 2)))


def _adaptive(build, start: int, cap: Optional[int] = None):
    cap = PRECISION_CAP if cap is None else cap
    N = start
    while True:
        try:
            return build(N), N
        except PrecisionExhausted:
            if N >= cap:
                raise PrecisionCapExceeded(f"orders unresolved at truncation {N}") from None
            N = min(2 * N, cap)


def analyze_point(
    curve: CurveParams,
    p: FixedPointDescriptor | int,
    truncation: Optional[int] = None,
    anchors: Optional[Sequence[int]] = None,
    check: bool = True,
) -> OsculationReport:
    """Ramification of all associated curves at a point of F.

    With ``check`` set, any disagreement with b_1 = k-2, b_l = k-1 raises
    :class:`TheoremViolation` carrying the computed report.
    """
    relocated = relocate(curve, p, anchors)
    n = curve.n

    def build(N):
        return ramification_from_orders(wronskian_orders(fixed_point_frame(relocated, N), n))

    report, _ = _adaptive(build, truncation or initial_truncation(curve))
    if check and report.ramification != expected_ramification(curve.k, n):
        raise TheoremViolation(
            f"{curve} at {p}: b = {report.ramification}, expected {expected_ramification(curve.k, n)}",
            report,
        )
    return report


def analyze_generic_point(curve: CurveParams, mu0, truncation: Optional[int] = None) -> OsculationReport:
    def build(N):
        return ramification_from_orders(wronskian_orders(generic_point_frame(curve, mu0, N), curve.n))

    report, _ = _adaptive(build, truncation or initial_truncation(curve))
    return report
