"""Exit criteria for the package, one test per criterion.

Every comparison is between exact integers or exact rationals; there is no
tolerance anywhere.  Each test records a PASS/FAIL line that is printed in
the pytest terminal summary.
"""
import random
from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from genfermat.analysis import draw_generic_values
from genfermat.curve import CurveParams, fixed_points, genus, relocate
from genfermat.local import (
    analyze_generic_point,
    analyze_point,
    fixed_point_frame,
    generic_point_frame,
    initial_truncation,
    wronskian_orders,
)
from genfermat.series import TruncatedSeries as S
from genfermat.series import kth_root_unit_series, series_order
from genfermat.weierstrass import (
    canonical_degree,
    classic_weight,
    gap_sequence,
    monomial_basis,
    plucker_table,
    q_dimension,
    weight_lower_bound,
)

CORPUS = [
    CurveParams(4, 2),
    CurveParams(5, 2),
    CurveParams(6, 2),
    CurveParams(3, 3, [2]),
    CurveParams(3, 3, [-1]),
    CurveParams(2, 4, [2, 3]),
    CurveParams(3, 4, [2, 3]),
    CurveParams(2, 5, [2, 3, 4]),
]
IDS = [str(c) for c in CORPUS]
SEED = 0

_osc_cache = {}
_gap_cache = {}


def osc(curve, j):
    key = (curve, j)
    if key not in _osc_cache:
        _osc_cache[key] = analyze_point(curve, j, check=False)
    return _osc_cache[key]


def gaps(curve, j):
    key = (curve, j)
    if key not in _gap_cache:
        _gap_cache[key] = gap_sequence(curve, j, check=False)
    return _gap_cache[key]


def per_point(curve, fn):
    """Evaluate ``fn`` at every point of F (points in one class share a frame)."""
    return [(p, fn(curve, p.vanishing_coordinate)) for p in fixed_points(curve)]


@pytest.mark.parametrize("curve", CORPUS, ids=IDS)
def test_c1_ramification_theorem(curve, acceptance_line):
    k, n = curve.k, curve.n
    bad = []
    for j in range(n + 1):
        b = osc(curve, j).ramification
        if b[1] != k - 2 or any(b[l] != k - 1 for l in range(2, n)):
            bad.append((j, b))
    detail = f"b = {list(osc(curve, 0).ramification)}" if not bad else f"mismatches {bad}"
    assert acceptance_line(f"C1 ramification theorem {curve}", not bad, detail)


@pytest.mark.parametrize("curve", CORPUS, ids=IDS)
def test_c2_converse_sampling(curve, acceptance_line):
    results = [(mu, analyze_generic_point(curve, mu).ramification) for mu in draw_generic_values(curve, 10, SEED)]
    witnesses = [(str(mu), b) for mu, b in results if any(b)]
    ok = len(results) == 10 and not witnesses
    assert acceptance_line(f"C2 converse sampling {curve}", ok, f"{10 - len(witnesses)}/10 unramified")


@pytest.mark.parametrize("curve", CORPUS, ids=IDS)
def test_c3_plucker_closure(curve, acceptance_line):
    reports = per_point(curve, osc)
    totals = [sum(rep.ramification[l] for _, rep in reports) for l in range(1, curve.n)]
    table = plucker_table(curve, totals)
    ok = table.ranks[-1] == 0 and min(table.ranks) >= 0
    if curve == CurveParams(4, 2):
        ok = ok and table.ranks == (0, 4, 12, 0)
    assert acceptance_line(f"C3 Pluecker closure {curve}", ok, f"d = {list(table.ranks)}")


@pytest.mark.parametrize("k, expected", [(4, 2), (5, 9), (6, 25)])
def test_c4_classic_weights(k, expected, acceptance_line):
    curve = CurveParams(k, 2)
    weights = [rep.weight for _, rep in per_point(curve, gaps)]
    ok = classic_weight(k) == expected and set(weights) == {expected}
    detail = f"w = {sorted(set(weights))}"
    if k == 4:
        g = genus(curve)
        ok = ok and sum(weights) == 24 == g * (g * g - 1)
        detail += f", total {sum(weights)}"
    assert acceptance_line(f"C4 classic weight k={k}", ok, detail)


def test_c5_special_case_24(acceptance_line):
    curve = CurveParams(2, 4, [2, 3])
    reports = [gaps(curve, j) for j in range(curve.n + 1)]
    ok = all(r.gaps == (1, 2, 3, 5, 7) and r.weight >= 3 for r in reports)
    assert acceptance_line("C5 gaps at (k,n)=(2,4)", ok, f"gaps {reports[0].gaps}, w = {reports[0].weight}")


@pytest.mark.parametrize("curve", [CurveParams(3, 3, [2]), CurveParams(3, 3, [-1])], ids=str)
def test_c5_special_case_33(curve, acceptance_line):
    ok = True
    for j in range(curve.n + 1):
        a = gaps(curve, j).gaps
        ok = ok and a[:5] == (1, 2, 3, 4, 5) and a[5:9] == (7, 8, 10, 13) and a[9] >= 16
        ok = ok and gaps(curve, j).weight >= 14
    rep = gaps(curve, 0)
    assert acceptance_line(f"C5 gaps at (k,n)=(3,3) {curve}", ok, f"gaps {rep.gaps}, w = {rep.weight}")


@pytest.mark.parametrize("curve", [c for c in CORPUS if c.n >= 3], ids=str)
def test_c6_weight_bound(curve, acceptance_line):
    bound = weight_lower_bound(curve.k, curve.n)
    weights = [rep.weight for _, rep in per_point(curve, gaps)]
    ok = min(weights) >= bound
    ok = ok and weight_lower_bound(3, 3) == 14 and weight_lower_bound(2, 4) == 3
    assert acceptance_line(f"C6 weight bound {curve}", ok, f"min w = {min(weights)} >= {bound}")


def _q_bruteforce(k, n, m):
    if m < 0:
        return 0
    total = 0
    for e in range(k ** (n - 2)):
        tail, x = [], e
        for _ in range(n - 2):
            tail.append(x % k)
            x //= k
        rest = m - sum(tail)
        if rest >= 0:
            total += rest + 1
    return total


@pytest.mark.parametrize("curve", CORPUS, ids=IDS)
def test_c7_dimension_accounting(curve, acceptance_line):
    k, n, g = curve.k, curve.n, genus(curve)
    r = canonical_degree(curve)
    ok = len(monomial_basis(curve, r)) == g
    detail = f"dim = {len(monomial_basis(curve, r))}, g = {g}"
    if n >= 3:
        s = [q_dimension(k, n, j) for j in range(k)]
        ok = ok and sum(s) == g and all(s[j] == _q_bruteforce(k, n, r - j) for j in range(k))
        detail += f", s(r-j) = {s}"
        if (k, n) == (3, 3):
            ok = ok and (s[0], s[1], s[2]) == (6, 3, 1)
    assert acceptance_line(f"C7 dimension accounting {curve}", ok, detail)


def test_c8a_prefactor_invariance(acceptance_line):
    rng = random.Random(SEED)
    frames = []
    for curve in CORPUS:
        N = initial_truncation(curve)
        for j in range(curve.n + 1):
            frames.append((curve, fixed_point_frame(relocate(curve, j), N)))
        mu = draw_generic_values(curve, 1, SEED)[0]
        frames.append((curve, generic_point_frame(curve, mu, N)))
    base = {id(fr): wronskian_orders(fr, c.n) for c, fr in frames}
    failures = 0
    for _ in range(100):
        curve, frame = rng.choice(frames)
        factors = [F(rng.choice([-1, 1]) * rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)) for _ in range(curve.n + 1)]
        if wronskian_orders(frame.rescaled(factors), curve.n) != base[id(frame)]:
            failures += 1
    assert acceptance_line("C8a prefactor rescaling invariance", failures == 0, f"{100 - failures}/100 trials")


@pytest.mark.parametrize("curve", [CurveParams(3, 3, [2]), CurveParams(2, 4, [2, 3])], ids=str)
def test_c8b_normalization_invariance(curve, acceptance_line):
    mismatches = []
    count = 0
    for j in range(curve.n + 1):
        rest = [i for i in range(curve.n + 1) if i != j]
        for anchors in permutations(rest, 2):
            count += 1
            o = analyze_point(curve, j, anchors=anchors, check=False)
            w = gap_sequence(curve, j, anchors=anchors, check=False)
            if o != osc(curve, j) or w != gaps(curve, j):
                mismatches.append((j, anchors))
    assert acceptance_line(
        f"C8b normalization invariance {curve}", not mismatches, f"{count - len(mismatches)}/{count} anchor choices agree"
    )


rationals = st.builds(F, st.integers(-60, 60), st.integers(1, 25))


@st.composite
def series(draw, truncation, lead_zeros=0, zero_constant=False):
    cs = draw(st.lists(rationals, min_size=truncation, max_size=truncation))
    zeros = draw(st.integers(0, lead_zeros))
    cs[:zeros] = [F(0)] * zeros
    if zero_constant:
        cs[0] = F(0)
    return S(cs)


KERNEL = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
_counts = {"root": 0, "ring": 0, "order": 0}


@KERNEL
@given(st.integers(1, 10).flatmap(lambda N: series(N, zero_constant=True)), st.integers(2, 7))
def _root_round_trip(u, k):
    _counts["root"] += 1
    assert kth_root_unit_series(u, k) ** k == u + 1


@KERNEL
@given(st.integers(1, 8).flatmap(lambda N: st.tuples(series(N), series(N), series(N))))
def _ring_axioms(abc):
    _counts["ring"] += 1
    a, b, c = abc
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a and a + b == b + a


@KERNEL
@given(st.integers(1, 12).flatmap(lambda N: st.tuples(series(N, lead_zeros=N), series(N, lead_zeros=N))))
def _order_additivity(ab):
    _counts["order"] += 1
    a, b = ab
    oa, ob = series_order(a), series_order(b)
    prod = a * b
    if oa is not None and ob is not None and oa + ob < prod.truncation:
        assert series_order(prod) == oa + ob


@pytest.mark.parametrize(
    "name, prop",
    [("root", _root_round_trip), ("ring", _ring_axioms), ("order", _order_additivity)],
)
def test_c9_kernel_soundness(name, prop, acceptance_line):
    _counts[name] = 0
    try:
        prop()
        ok = True
    except AssertionError:
        ok = False
    ok = ok and _counts[name] >= 1000
    assert acceptance_line(f"C9 kernel property '{name}'", ok, f"{_counts[name]} instances")
