"""Third-order polynomials.

``F(P)`` at ``(n, ell, phi)`` is ``phi`` applied to the function
``m -> [P](m, ell, phi)``, evaluated at ``n``.  Operators ``phi`` are given
by second-order templates: ``phi(f)(m) = [T](m, f)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

from . import arctic as ac
from . import expr as ex
from .arctic import Incomparable, LimResult, arc2_lim, arc_lim
from .errors import DuplicateInputs
from .expr import Expr, fold
from .monotone import AffineSlope, MonotoneFn
from .poly2 import circ, p2_deg, p2_eval, star

Fn = Callable[[int], int]


@dataclass(frozen=True)
class Operator2:
    """A monotone operator on monotone functions.

    Either a second-order ``template`` (``phi(f)(m) = [template](m, f)``) or
    a raw ``builtin`` mapping functions to functions (tests only).
    """

    template: Optional[Expr] = None
    builtin: Optional[Callable[[Fn], Fn]] = None

    def __post_init__(self):
        if (self.template is None) == (self.builtin is None):
            raise ValueError("give exactly one of template or builtin")

    def apply(self, f: Fn) -> Fn:
        if self.builtin is not None:
            return self.builtin(f)
        t = self.template
        return lambda m: p2_eval(t, m, f)


def p3_eval(P: Expr, n: int, ell: Fn, phi: Operator2) -> int:
    cache: Dict[Tuple[int, int], int] = {}

    def ev(e: Expr, m: int) -> int:
        key = (id(e), m)
        hit = cache.get(key)
        if hit is not None:
            return hit
        if isinstance(e, ex.One):
            out = 1
        elif isinstance(e, ex.VarN):
            out = m
        elif isinstance(e, ex.Add):
            out = ev(e.left, m) + ev(e.right, m)
        elif isinstance(e, ex.Mul):
            out = ev(e.left, m) * ev(e.right, m)
        elif isinstance(e, ex.Lam):
            out = ell(ev(e.arg, m))
        elif isinstance(e, ex.AppF):
            arg = e.arg
            out = phi.apply(lambda k: ev(arg, k))(m)
        else:
            raise TypeError(f"not a third-order polynomial node: {e!r}")
        cache[key] = out
        return out

    return ev(P, n)


p3_star = star
p3_circ = circ


def p3_opcirc(P: Expr, Q: Expr) -> Expr:
    """Replace ``F`` in ``P`` by ``Q``: ``F(A) (*) Q = Q o (A (*) Q)``."""

    def step(e, rs):
        if isinstance(e, ex.AppF):
            return circ(Q, rs[0])
        if not rs or all(r is a for r, a in zip(rs, e.children)):
            return e
        return type(e)(*rs)

    return fold(P, step)


def p3_DEG(P: Expr) -> ac.ArcticTerm:
    """Order-two arctic degree; ``F`` contributes ``Delta``."""

    def step(e, rs):
        if isinstance(e, ex.AppF):
            return ac.Delta(rs[0])
        if isinstance(e, ex.One):
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


def p3_depthF(P: Expr) -> int:
    return fold(P, lambda e, rs: (1 if isinstance(e, ex.AppF) else 0) + max(rs, default=0))


def p3_double_degree(P: Expr) -> Union[LimResult, Incomparable]:
    """``lim Deg(lim DEG(P))``: the limit of the order-two degree is read as
    a second-order polynomial, whose degree is then taken again."""
    lim2 = arc2_lim(p3_DEG(P))
    if isinstance(lim2, Incomparable):
        return lim2
    return arc_lim(p2_deg(lim2.poly))


# -- randomized distinguisher -------------------------------------------------


@dataclass(frozen=True)
class NotFound:
    tries: int

    def describe(self):
        return f"no separating assignment found in {self.tries} tries (inconclusive)"


@dataclass(frozen=True)
class Assignment3:
    n: int
    ell: MonotoneFn
    phi: Operator2
    values: Tuple[int, ...]


def random_ell(rng: random.Random, points: int = 12) -> MonotoneFn:
    """Steep table: each value is the previous one times a factor in 2..5."""
    xs = sorted(rng.sample(range(0, 4 * points), points))
    y = rng.randint(1, 4)
    table = []
    for x in xs:
        table.append((x, y))
        y *= rng.randint(2, 5)
    return MonotoneFn(table, AffineSlope(rng.randint(1, 5)))


_TEMPLATES = ["L(N)", "L(N) * L(N)", "L(N) + N", "L(L(N)) + 1", "L(N * N) + L(N)", "N * L(N) + 2", "L(N + 1) * N"]


def random_phi(rng: random.Random) -> Operator2:
    from .syntax import parse_expr

    return Operator2(template=parse_expr(rng.choice(_TEMPLATES), "p2"))


def p3_distinguish_random(Ps: Sequence[Expr], budget: int = 200, seed: int = 0) -> Union[Assignment3, NotFound]:
    if len(set(Ps)) != len(Ps):
        raise DuplicateInputs("inputs must be pairwise different trees")
    rng = random.Random(seed)
    for _ in range(budget):
        n = rng.randint(2, 6)
        ell = random_ell(rng)
        phi = random_phi(rng)
        values = tuple(p3_eval(P, n, ell, phi) for P in Ps)
        if len(set(values)) == len(values):
            return Assignment3(n, ell, phi, values)
    return NotFound(budget)

