"""Exact-arithmetic osculation and Weierstrass analysis of generalized Fermat curves."""
from .curve import CurveParams, fixed_points, genus, relocate
from .errors import GenFermatError, InvalidCurve
from .local import analyze_generic_point, analyze_point
from .weierstrass import gap_sequence, plucker_table, weight_lower_bound

__all__ = [
    "CurveParams",
    "GenFermatError",
    "InvalidCurve",
    "analyze_generic_point",
    "analyze_point",
    "fixed_points",
    "gap_sequence",
    "genus",
    "plucker_table",
    "relocate",
    "weight_lower_bound",
]
