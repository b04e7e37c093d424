"""Second- and third-order polynomials over the naturals."""

import sys

from .arctic import (
    Incomparable,
    Lim2Result,
    LimResult,
    arc2_eval,
    arc2_lim,
    arc2_subst_D,
    arc2_subst_Delta,
    arc_eq,
    arc_eval,
    arc_lim,
    minimal_threshold,
)
from .bounds import BoundReport, bound_concat_a, bound_concat_b
from .dagnf import (
    Assignment,
    NormalDag,
    nf_build,
    nf_distinguish,
    nf_eq,
    nf_height,
    nf_merge,
    nf_to_poly2,
    sz_separate,
    verify_distinct,
)
from .monotone import MonotoneFn
from .poly1 import Poly1, p1_add, p1_eval, p1_eventual_compare, p1_mul, p1_occurs, p1_total_degree
from .poly2 import p2_asym_deg, p2_circ, p2_deg, p2_depth, p2_eval, p2_is_linear, p2_star
from .poly3 import (
    Operator2,
    p3_circ,
    p3_DEG,
    p3_depthF,
    p3_distinguish_random,
    p3_double_degree,
    p3_eval,
    p3_opcirc,
    p3_star,
)
from .syntax import parse, parse_expr, to_text

# numerals like 999 desugar into left-nested chains; folds recurse on them
if sys.getrecursionlimit() < 20_000:
    sys.setrecursionlimit(20_000)

__version__ = "0.1.0"

__all__ = [
    "Incomparable",
    "Lim2Result",
    "LimResult",
    "arc2_eval",
    "arc2_lim",
    "arc2_subst_D",
    "arc2_subst_Delta",
    "arc_eq",
    "arc_eval",
    "arc_lim",
    "minimal_threshold",
    "BoundReport",
    "bound_concat_a",
    "bound_concat_b",
    "Assignment",
    "NormalDag",
    "nf_build",
    "nf_distinguish",
    "nf_eq",
    "nf_height",
    "nf_merge",
    "nf_to_poly2",
    "sz_separate",
    "verify_distinct",
    "MonotoneFn",
    "Poly1",
    "p1_add",
    "p1_eval",
    "p1_eventual_compare",
    "p1_mul",
    "p1_occurs",
    "p1_total_degree",
    "p2_asym_deg",
    "p2_circ",
    "p2_deg",
    "p2_depth",
    "p2_eval",
    "p2_is_linear",
    "p2_star",
    "Operator2",
    "p3_circ",
    "p3_DEG",
    "p3_depthF",
    "p3_distinguish_random",
    "p3_double_degree",
    "p3_eval",
    "p3_opcirc",
    "p3_star",
    "parse",
    "parse_expr",
    "to_text",
]
