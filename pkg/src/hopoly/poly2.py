"""Second-order polynomials: evaluation, degree, compositions, depth."""

from __future__ import annotations

from typing import Callable

from . import arctic as ac
from . import expr as ex
from .arctic import LimResult, arc_lim
from .expr import Expr, fold


def p2_eval(P: Expr, n: int, ell: Callable[[int], int]) -> int:
    """Value of ``P`` at first-order argument ``n`` and function ``ell``."""

    def step(e, rs):
        if isinstance(e, ex.One):
            return 1
        if isinstance(e, ex.Zero):
            return 0
        if isinstance(e, ex.VarN):
            return n
        if isinstance(e, ex.Add):
            return rs[0] + rs[1]
        if isinstance(e, ex.Mul):
            return rs[0] * rs[1]
        if isinstance(e, ex.Lam):
            return ell(rs[0])
        raise TypeError(f"not a second-order polynomial node: {e!r}")

    return fold(P, step)


def p2_deg(P: Expr) -> ac.ArcticTerm:
    """Arctic degree: 1 -> 0, N -> 1, + -> max, * -> +, L(.) -> D * (.).

    ``Zero`` (only found in limits) also gets degree 0.
    """

    def step(e, rs):
        if isinstance(e, (ex.One, ex.Zero)):
            return ac.ZERO
        if isinstance(e, ex.VarN):
            return ac.UNIT
        if isinstance(e, ex.Add):
            return ac.Max(*rs)
        if isinstance(e, ex.Mul):
            return ac.AAdd(*rs)
        if isinstance(e, ex.Lam):
            return ac.AMul(ac.DVAR, rs[0])
        raise TypeError(f"no degree for {type(e).__name__}")

    return fold(P, step)


def star(P: Expr, Q: Expr) -> Expr:
    """Replace every ``N`` in ``P`` by ``Q``.  Works on trees of any order."""
    return fold(P, lambda e, rs: Q if isinstance(e, ex.VarN) else _rebuild(e, rs))


def circ(P: Expr, Q: Expr) -> Expr:
    """Replace ``L`` in ``P`` by ``Q``: ``L(A) o Q = Q * (A o Q)``.

    ``F`` nodes (third order) are kept and rewritten inside.
    """

    def step(e, rs):
        if isinstance(e, ex.Lam):
            return star(Q, rs[0])
        return _rebuild(e, rs)

    return fold(P, step)


def _rebuild(e: Expr, rs) -> Expr:
    if not rs:
        return e
    if all(r is a for r, a in zip(rs, e.children)):
        return e
    return type(e)(*rs)


p2_star = star
p2_circ = circ


def p2_depth(P: Expr) -> int:
    """Maximum nesting of ``L``."""
    return fold(P, lambda e, rs: (1 if isinstance(e, ex.Lam) else 0) + max(rs, default=0))


def p2_asym_deg(P: Expr) -> LimResult:
    return arc_lim(p2_deg(P))


def p2_is_linear(P: Expr) -> bool:
    return not ex.contains(P, ex.Mul)
