"""Plane tropical curves, twist-admissible sets and combinatorial patchworking.

Min-plus convention: the coefficient ``b`` of ``x^i y^j`` stands for
``t^(-b) z^i w^j``; the dual subdivision is cut out by the lower hull of the
lifted points ``(i, j, b_ij)``.
"""

from .curve import CurveEdge, TropicalCurve, build_curve
from .patchwork import (
    Arc,
    ArcSet,
    component_count,
    count_components,
    disjoint_union,
    equivalent_signs,
    harnack_signs,
    is_haas_maximal,
    is_twist_admissible,
    patchwork_arcs,
    signs_to_twists,
    twists_to_signs,
    viro_count,
    w_twist,
)
from .poly import TropicalPoly, format_poly, parse_poly, quadratic_lift
from .subdivision import DualSubdivision, dual_subdivision

__all__ = [
    "Arc",
    "ArcSet",
    "CurveEdge",
    "DualSubdivision",
    "TropicalCurve",
    "TropicalPoly",
    "build_curve",
    "component_count",
    "count_components",
    "disjoint_union",
    "dual_subdivision",
    "equivalent_signs",
    "format_poly",
    "harnack_signs",
    "is_haas_maximal",
    "is_twist_admissible",
    "parse_poly",
    "patchwork_arcs",
    "quadratic_lift",
    "signs_to_twists",
    "twists_to_signs",
    "viro_count",
    "w_twist",
]
