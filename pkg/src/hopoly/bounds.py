"""Symbolic running-time bounds for chaining two oracle machines.

Bounds are second-order polynomials and hold up to constant factors.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import arctic as ac
from .arctic import LimResult, arc_lim
from .expr import Add, Expr, Mul
from .poly2 import circ, p2_deg, star


@dataclass(frozen=True)
class BoundReport:
    bound: Expr
    degree: ac.ArcticTerm
    asymptotic: LimResult


def _report(bound: Expr) -> BoundReport:
    degree = p2_deg(bound)
    return BoundReport(bound, degree, arc_lim(degree))


def bound_concat_a(P: Expr, Q: Expr) -> BoundReport:
    """Feed the output of a ``P``-time machine into a ``Q``-time one:
    ``P + Q * P`` (``*`` is substitution of ``N``)."""
    return _report(Add(P, star(Q, P)))


def bound_concat_b(P: Expr, Q: Expr) -> BoundReport:
    """Use a ``P``-time machine as the oracle of a ``Q``-time one:
    ``(Q o P) . (P * (Q o P))``."""
    qp = circ(Q, P)
    return _report(Mul(qp, star(P, qp)))


def expected_degree_a(P: Expr, Q: Expr) -> ac.ArcticTerm:
    dp = p2_deg(P)
    return ac.Max(dp, ac.AMul(dp, p2_deg(Q)))


def expected_degree_b(P: Expr, Q: Expr) -> ac.ArcticTerm:
    dp = p2_deg(P)
    dqp = ac.arc2_subst_D(p2_deg(Q), dp)
    return ac.AAdd(dqp, ac.AMul(dp, dqp))
