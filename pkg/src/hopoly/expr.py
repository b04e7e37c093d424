"""Expression trees for second- and third-order polynomials.

One node family serves both orders:

    One | VarN | Add(l, r) | Mul(l, r) | Lam(arg) | AppF(arg)

A second-order polynomial is a tree without ``AppF``.  ``Zero`` is not part
of the input grammar; it only shows up in limits of arctic terms, where a
constant 0 degree has to be represented.

Nodes are immutable and compare structurally.  Hashes are cached at
construction, so sharing subtrees (which compositions do heavily) is cheap.
"""

from __future__ import annotations

from typing import Callable, Dict, Tuple


class Expr:
    __slots__ = ("args", "_hash")
    tag = "?"

    def __init__(self, *args):
        self.args: Tuple = args
        self._hash = hash((self.tag, args))

    @property
    def children(self) -> Tuple:
        return self.args

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self.args == other.args

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        from .syntax import to_text

        return f"{type(self).__name__}<{to_text(self)}>"

    def __add__(self, other):
        return Add(self, other)

    def __mul__(self, other):
        return Mul(self, other)


class One(Expr):
    __slots__ = ()
    tag = "1"


class Zero(Expr):
    __slots__ = ()
    tag = "0"


class VarN(Expr):
    __slots__ = ()
    tag = "N"


class Add(Expr):
    __slots__ = ()
    tag = "+"

    @property
    def left(self):
        return self.args[0]

    @property
    def right(self):
        return self.args[1]


class Mul(Expr):
    __slots__ = ()
    tag = "*"

    @property
    def left(self):
        return self.args[0]

    @property
    def right(self):
        return self.args[1]


class Lam(Expr):
    __slots__ = ()
    tag = "L"

    @property
    def arg(self):
        return self.args[0]


class AppF(Expr):
    __slots__ = ()
    tag = "F"

    @property
    def arg(self):
        return self.args[0]


ONE = One()
ZERO = Zero()
N = VarN()


def numeral(k: int) -> Expr:
    """Left-associated sum of ``k`` ones; 0 gives ``Zero``."""
    if k < 0:
        raise ValueError("negative numeral")
    if k == 0:
        return ZERO
    e = ONE
    for _ in range(k - 1):
        e = Add(e, ONE)
    return e


def power(base: Expr, k: int) -> Expr:
    """Left-associated product of ``k`` copies of ``base`` (k >= 1)."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    e = base
    for _ in range(k - 1):
        e = Mul(e, base)
    return e


def add(a: Expr, b: Expr) -> Expr:
    """``Add`` that absorbs ``Zero``; used when building limits."""
    if a is ZERO or isinstance(a, Zero):
        return b
    if isinstance(b, Zero):
        return a
    return Add(a, b)


def mul(a: Expr, b: Expr) -> Expr:
    """``Mul`` that absorbs ``Zero`` and drops unit factors."""
    if isinstance(a, Zero) or isinstance(b, Zero):
        return ZERO
    if isinstance(a, One):
        return b
    if isinstance(b, One):
        return a
    return Mul(a, b)


def fold(expr: Expr, fn: Callable, cache: Dict[int, object] | None = None):
    """Bottom-up fold; ``fn(node, child_results)``.  Shared subtrees are
    visited once."""
    if cache is None:
        cache = {}

    def go(e):
        key = id(e)
        hit = cache.get(key)
        if hit is not None or key in cache:
            return hit
        out = fn(e, [go(a) for a in e.children])
        cache[key] = out
        return out

    return go(expr)


def size(expr: Expr) -> int:
    """Number of nodes of the tree (shared subtrees counted each time)."""
    return fold(expr, lambda e, rs: 1 + sum(rs))


def order(expr: Expr) -> int:
    """2 for second-order trees, 3 if any ``AppF`` occurs."""
    return fold(expr, lambda e, rs: max([3 if isinstance(e, AppF) else 2, *rs]))


def contains(expr: Expr, kind: type) -> bool:
    return fold(expr, lambda e, rs: isinstance(e, kind) or any(rs))
