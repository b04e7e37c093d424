"""Random polynomial generators and single-step syntactic rewrites.

Used by the property tests and by nothing else in the library.
"""

from __future__ import annotations

import random
from typing import Callable, List, Optional, Tuple

from . import arctic as ac
from . import expr as ex
from .expr import Expr


def random_poly(rng: random.Random, size: int = 12, depth: int = 4, third: bool = False) -> Expr:
    """Random tree with at most ``size`` nodes and at most ``depth`` nested
    ``L``/``F`` applications."""
    return _grow(rng, rng.randint(1, size), depth, third)


def _grow(rng, size, depth, third) -> Expr:
    if size <= 1:
        return rng.choice((ex.ONE, ex.N, ex.N))
    unary = [ex.Lam] + ([ex.AppF] if third else [])
    if depth > 0 and (size == 2 or rng.random() < 0.3):
        return rng.choice(unary)(_grow(rng, size - 1, depth - 1, third))
    if size == 2:
        return rng.choice((ex.ONE, ex.N))
    left = rng.randint(1, size - 2)
    op = rng.choice((ex.Add, ex.Mul))
    return op(_grow(rng, left, depth, third), _grow(rng, size - 1 - left, depth, third))


def covers(e: Expr) -> bool:
    """Every additive branch of ``e`` mentions ``N`` (possibly inside an
    application)."""
    if isinstance(e, ex.VarN):
        return True
    if isinstance(e, (ex.One, ex.Zero)):
        return False
    if isinstance(e, ex.Add):
        return covers(e.left) and covers(e.right)
    if isinstance(e, ex.Mul):
        return covers(e.left) or covers(e.right)
    return covers(e.arg)


def constrained(e: Expr) -> bool:
    """The whole tree and every ``L``/``F`` argument satisfy :func:`covers`."""
    ok = [covers(e)]

    def visit(node, _):
        if isinstance(node, (ex.Lam, ex.AppF)) and not covers(node.arg):
            ok[0] = False

    ex.fold(e, visit)
    return ok[0]


def random_constrained(rng: random.Random, size: int = 12, depth: int = 4, third: bool = False) -> Expr:
    """Random tree accepted by :func:`constrained`, built directly."""
    return _cover(rng, rng.randint(1, size), depth, third)


def _cover(rng, size, depth, third) -> Expr:
    if size <= 1 or (size == 2 and depth == 0):
        return ex.N
    unary = [ex.Lam] + ([ex.AppF] if third else [])
    if depth > 0 and (size == 2 or rng.random() < 0.35):
        return rng.choice(unary)(_cover(rng, size - 1, depth - 1, third))
    left = rng.randint(1, size - 2)
    right = size - 1 - left
    if rng.random() < 0.5:
        return ex.Add(_cover(rng, left, depth, third), _cover(rng, right, depth, third))
    a = _cover(rng, left, depth, third)
    b = _any_constrained(rng, right, depth, third)
    return ex.Mul(a, b) if rng.random() < 0.5 else ex.Mul(b, a)


def _any_constrained(rng, size, depth, third) -> Expr:
    # arbitrary shape, but applications only wrap covering arguments
    if size <= 1:
        return rng.choice((ex.ONE, ex.N))
    unary = [ex.Lam] + ([ex.AppF] if third else [])
    if depth > 0 and (size == 2 or rng.random() < 0.3):
        return rng.choice(unary)(_cover(rng, size - 1, depth - 1, third))
    if size == 2:
        return rng.choice((ex.ONE, ex.N))
    left = rng.randint(1, size - 2)
    op = rng.choice((ex.Add, ex.Mul))
    return op(_any_constrained(rng, left, depth, third), _any_constrained(rng, size - 1 - left, depth, third))


def random_arctic(rng: random.Random, size: int = 25, max_const: int = 20) -> ac.ArcticTerm:
    """Random univariate order-one arctic term."""
    if size <= 1:
        return ac.DVAR if rng.random() < 0.5 else ac.Const(rng.randint(0, max_const))
    left = rng.randint(1, size - 2) if size > 2 else 1
    right = max(1, size - 1 - left)
    kind = rng.choice(("add", "mul", "max"))
    a, b = random_arctic(rng, left, max_const), random_arctic(rng, right, max_const)
    return {"add": ac.AAdd, "mul": ac.AMul, "max": ac.Max}[kind](a, b)


def random_arctic2(rng: random.Random, size: int = 10, max_const: int = 5) -> ac.ArcticTerm:
    if size <= 1:
        return ac.DVAR if rng.random() < 0.5 else ac.Const(rng.randint(0, max_const))
    if size == 2 or rng.random() < 0.2:
        return ac.Delta(random_arctic2(rng, size - 1, max_const))
    left = rng.randint(1, size - 2)
    kind = rng.choice((ac.AAdd, ac.AMul, ac.Max))
    return kind(random_arctic2(rng, left, max_const), random_arctic2(rng, size - 1 - left, max_const))


# -- rewrites for syntactic equivalence ---------------------------------------

Rule = Callable[[Expr], Optional[Expr]]


def _commute(e):
    if isinstance(e, (ex.Add, ex.Mul)):
        return type(e)(e.right, e.left)


def _assoc_right(e):
    if isinstance(e, (ex.Add, ex.Mul)) and type(e.left) is type(e):
        return type(e)(e.left.left, type(e)(e.left.right, e.right))


def _assoc_left(e):
    if isinstance(e, (ex.Add, ex.Mul)) and type(e.right) is type(e):
        return type(e)(type(e)(e.left, e.right.left), e.right.right)


def _distribute(e):
    if isinstance(e, ex.Mul):
        if isinstance(e.right, ex.Add):
            return ex.Add(ex.Mul(e.left, e.right.left), ex.Mul(e.left, e.right.right))
        if isinstance(e.left, ex.Add):
            return ex.Add(ex.Mul(e.left.left, e.right), ex.Mul(e.left.right, e.right))


def _factor(e):
    if isinstance(e, ex.Add) and isinstance(e.left, ex.Mul) and isinstance(e.right, ex.Mul):
        if e.left.left == e.right.left:
            return ex.Mul(e.left.left, ex.Add(e.left.right, e.right.right))


def _drop_unit(e):
    if isinstance(e, ex.Mul) and isinstance(e.right, ex.One):
        return e.left


def _add_unit(e):
    return ex.Mul(e, ex.ONE)


RULES: Tuple[Rule, ...] = (_commute, _assoc_right, _assoc_left, _distribute, _factor, _drop_unit, _add_unit)


def _positions(e: Expr, path=()) -> List[Tuple[int, ...]]:
    out = [path]
    for i, c in enumerate(e.children):
        out.extend(_positions(c, path + (i,)))
    return out


def _replace(e: Expr, path, fn) -> Expr:
    if not path:
        return fn(e)
    kids = list(e.children)
    kids[path[0]] = _replace(kids[path[0]], path[1:], fn)
    return type(e)(*kids)


def random_rewrite(rng: random.Random, e: Expr) -> Expr:
    """Apply one randomly chosen equivalence rule at a random position."""
    options = []
    for path in _positions(e):
        node = e
        for i in path:
            node = node.children[i]
        for rule in RULES:
            if rule(node) is not None:
                options.append((path, rule))
    path, rule = rng.choice(options)
    return _replace(e, path, rule)
