"""Whole-curve analysis, verification suites and generic-point sampling."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .curve import (
    INFINITY,
    CurveParams,
    branch_set,
    degree,
    format_rational,
    genus,
    relocate,
    validate,
)
from .errors import ConsistencyFailure, GenFermatError, InvalidCurve
from .local import (
    analyze_generic_point,
    analyze_point,
    expected_ramification,
    fixed_point_frame,
    initial_truncation,
    wronskian_orders,
)
from .weierstrass import (
    canonical_degree,
    classic_weight,
    closed_form_totals,
    gap_sequence,
    hilbert_function,
    monomial_basis,
    plucker_table,
    q_dimension,
    weight_lower_bound,
)

__all__ = [
    "CheckResult",
    "CurveSpecFile",
    "analyze_curve",
    "draw_generic_values",
    "load_spec_file",
    "parse_spec",
    "spotcheck",
    "to_json",
    "verify_curve",
]

DEFAULT_SAMPLES = 10
DEFAULT_SEED = 0
MU_BOUND = 1000


@dataclass
class CurveSpecFile:
    curves: list
    truncation: Optional[int] = None
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED


def parse_spec(data) -> CurveSpecFile:
    """Validate a decoded spec document; any bad record rejects the whole file."""
    if isinstance(data, list):
        data = {"curves": data}
    if not isinstance(data, dict) or not isinstance(data.get("curves"), list):
        raise InvalidCurve("malformed", "spec file needs a 'curves' list")
    curves = []
    for i, record in enumerate(data["curves"]):
        if not isinstance(record, dict):
            raise InvalidCurve("malformed", f"curve record {i} is not an object")
        curve = CurveParams.from_record(record)
        try:
            validate(curve)
        except InvalidCurve as exc:
            raise InvalidCurve(exc.reason, f"curve record {i}: {exc.detail}") from None
        curves.append(curve)
    opts = data.get("options", {}) or {}
    return CurveSpecFile(
        curves,
        truncation=opts.get("truncation"),
        samples=opts.get("samples", DEFAULT_SAMPLES),
        seed=opts.get("seed", DEFAULT_SEED),
    )


def load_spec_file(path) -> CurveSpecFile:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidCurve("malformed", f"not valid JSON ({exc})") from None
    return parse_spec(data)


def _fmt_branch(value) -> str:
    return "infinity" if value is INFINITY else format_rational(value)


def _class_reports(curve, truncation=None, anchors=None, check=True):
    out = []
    for j in range(curve.n + 1):
        osc = analyze_point(curve, j, truncation=truncation, anchors=anchors, check=check)
        wei = gap_sequence(curve, j, truncation=truncation, anchors=anchors, check=check)
        out.append((j, osc, wei))
    return out


def _summed_totals(curve, classes) -> list[int]:
    mult = curve.k ** (curve.n - 1)
    return [sum(osc.ramification[l] for _, osc, _ in classes) * mult for l in range(1, curve.n)]


def analyze_curve(curve: CurveParams, truncation: Optional[int] = None) -> dict:
    """Full report for one curve.

    Raises TheoremViolation / ConsistencyFailure when a computed value
    contradicts a closed form; those are never folded into the report.
    """
    validate(curve)
    g = genus(curve)
    branches = branch_set(curve)
    mult = curve.k ** (curve.n - 1)
    classes = _class_reports(curve, truncation)
    table = plucker_table(curve, _summed_totals(curve, classes))
    report = {
        "curve": curve.to_record(),
        "genus": g,
        "degree": degree(curve),
        "fixed_point_count": (curve.n + 1) * mult,
        "canonical_degree": canonical_degree(curve),
        "weight_bound": weight_lower_bound(curve.k, curve.n) if curve.n >= 3 else None,
        "classic_weight": classic_weight(curve.k) if curve.n == 2 else None,
        "fixed_point_classes": [
            {
                "vanishing_coordinate": j,
                "branch_value": _fmt_branch(branches[j]),
                "multiplicity": mult,
                "relocated_lambdas": [format_rational(x) for x in relocate(curve, j).lambdas],
                "osculation": osc.to_dict(),
                "weierstrass": wei.to_dict(),
            }
            for j, osc, wei in classes
        ],
        "plucker": table.to_dict(),
        "verdicts": {
            "ramification_theorem": True,
            "hyperosculating_set_is_F": all(osc.hyperosculating for _, osc, _ in classes),
            "plucker_closure": True,
            "weight_at_least_bound": all(
                w.weight >= w.bound for _, _, w in classes
            ),
        },
    }
    return report


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


CSV_FIELDS = [
    "k", "n", "lambdas", "genus", "degree", "fixed_point_count", "canonical_degree",
    "vanishing_coordinate", "branch_value", "multiplicity", "wedge_orders",
    "ramification", "hyperosculating", "gaps", "weight", "bound", "bound_tight",
]


def csv_rows(report: dict):
    c = report["curve"]
    for cls in report["fixed_point_classes"]:
        osc, wei = cls["osculation"], cls["weierstrass"]
        yield {
            "k": c["k"],
            "n": c["n"],
            "lambdas": " ".join(c["lambdas"]),
            "genus": report["genus"],
            "degree": report["degree"],
            "fixed_point_count": report["fixed_point_count"],
            "canonical_degree": report["canonical_degree"],
            "vanishing_coordinate": cls["vanishing_coordinate"],
            "branch_value": cls["branch_value"],
            "multiplicity": cls["multiplicity"],
            "wedge_orders": " ".join(map(str, osc["wedge_orders"])),
            "ramification": " ".join(map(str, osc["ramification"])),
            "hyperosculating": osc["hyperosculating"],
            "gaps": " ".join(map(str, wei["gaps"])),
            "weight": wei["weight"],
            "bound": wei["bound"],
            "bound_tight": wei["bound_tight"],
        }


def draw_generic_values(curve: CurveParams, samples: int, seed: int) -> list[Fraction]:
    """Seeded rational values off the branch set, numerator and denominator bounded by 1000."""
    rng = random.Random(seed)
    forbidden = set(branch_set(curve)[1:])
    out = []
    while len(out) < samples:
        mu = Fraction(rng.randint(-MU_BOUND, MU_BOUND), rng.randint(1, MU_BOUND))
        if mu in forbidden:
            continue
        out.append(mu)
    return out


def spotcheck(curve: CurveParams, samples: int, seed: int, truncation: Optional[int] = None) -> dict:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    validate(curve)
    points = []
    witnesses = []
    for mu in draw_generic_values(curve, samples, seed):
        rep = analyze_generic_point(curve, mu, truncation)
        points.append({"mu0": format_rational(mu), "ramification": list(rep.ramification)})
        if any(rep.ramification):
            witnesses.append(points[-1])
    return {
        "curve": curve.to_record(),
        "seed": seed,
        "samples": samples,
        "checked": len(points),
        "unramified": len(points) - len(witnesses),
        "points": points,
        "witnesses": witnesses,
    }


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self, curve) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f" ({self.detail})" if self.detail else ""
        return f"[{status}] {curve} {self.name}{tail}"


def _check(name, fn) -> CheckResult:
    try:
        ok, detail = fn()
    except GenFermatError as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, bool(ok), detail)


def verify_curve(
    curve: CurveParams,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    truncation: Optional[int] = None,
    corrupt_b_totals: bool = False,
) -> list[CheckResult]:
    """Run every invariant suite against one curve and collect verdicts.

    ``corrupt_b_totals`` is a fault-injection hook: it perturbs the summed
    ramification totals before the Pluecker check.
    """
    validate(curve)
    k, n = curve.k, curve.n
    g = genus(curve)
    classes = _class_reports(curve, truncation, check=False)
    results = []

    def ramification():
        bad = [j for j, osc, _ in classes if osc.ramification != expected_ramification(k, n)]
        return not bad, f"mismatch at classes {bad}" if bad else f"b = {list(expected_ramification(k, n))}"

    def totals():
        summed = _summed_totals(curve, classes)
        return summed == closed_form_totals(k, n), f"summed {summed}"

    def plucker():
        summed = _summed_totals(curve, classes)
        if corrupt_b_totals:
            summed = [b + 1 for b in summed]
        try:
            table = plucker_table(curve, summed)
        except ConsistencyFailure as exc:
            return False, str(exc)
        return True, f"d = {list(table.ranks)}"

    def dimension():
        count = len(monomial_basis(curve, canonical_degree(curve)))
        ok = count == g == hilbert_function(k, n, canonical_degree(curve))
        if n >= 3:
            ok = ok and sum(q_dimension(k, n, j) for j in range(k)) == g
        return ok, f"dim = {count}, g = {g}"

    def weights():
        ws = [w.weight for _, _, w in classes]
        if n >= 3:
            bound = weight_lower_bound(k, n)
            return min(ws) >= bound, f"weights {ws} vs bound {bound}"
        cw = classic_weight(k)
        return all(w == cw for w in ws), f"weights {ws} vs classic {cw}"

    def normalization():
        mismatched = []
        for j, osc, wei in classes:
            rest = [i for i in range(n + 1) if i != j]
            for anchors in ((rest[1], rest[0]), (rest[-1], rest[0])):
                if anchors[0] == anchors[1]:
                    continue
                osc2 = analyze_point(curve, j, truncation, anchors=anchors, check=False)
                wei2 = gap_sequence(curve, j, truncation, anchors=anchors, check=False)
                if osc2 != osc or wei2 != wei:
                    mismatched.append((j, anchors))
        return not mismatched, f"mismatches {mismatched}" if mismatched else ""

    def prefactor():
        rng = random.Random(seed)
        N = truncation or initial_truncation(curve)
        for j, osc, _ in classes:
            frame = fixed_point_frame(relocate(curve, j), N)
            factors = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50)) for _ in range(n + 1)]
            if wronskian_orders(frame.rescaled(factors), n) != list(osc.wedge_orders):
                return False, f"class {j} with factors {factors}"
        return True, ""

    def converse():
        rep = spotcheck(curve, samples, seed, truncation)
        return not rep["witnesses"], f"{rep['unramified']}/{rep['checked']} unramified"

    checks = [
        ("ramification-theorem", ramification),
        ("total-ramification", totals),
        ("plucker-closure", plucker),
        ("canonical-dimension", dimension),
        ("weight-bound" if n >= 3 else "classic-weight", weights),
        ("normalization-invariance", normalization),
        ("prefactor-invariance", prefactor),
        ("converse-sampling", converse),
    ]
    for name, fn in checks:
        results.append(_check(name, fn))
    return results
