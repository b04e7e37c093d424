"""Text grammar for polynomials of every order, and the canonical printer.

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NAT)?
    atom   := NAT | 'N' | 'L' '(' expr ')' | 'F' '(' expr ')'
            | 'D' | 'max' '(' expr (',' expr)+ ')' | 'Delta' '(' expr ')'
            | '(' expr ')'

Numerals and ``^`` are sugar: in p2/p3 mode they expand to sums of ``1``
and repeated products.  ``D``, ``max`` and ``Delta`` belong to the arctic
mode, ``F`` to p3.  ``Λ``, ``Δ`` and ``𝓕`` are accepted as aliases.

The printer re-sugars exactly the shapes the parser produces, so printing
then parsing gives back the same tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import arctic as ac
from . import expr as ex
from .errors import OrderMismatch, ParseError
from .expr import Expr
from .poly1 import Poly1

ORDERS = ("auto", "p2", "p3", "arctic")

_ALIASES = {"Λ": "L", "Δ": "Delta", "𝓕": "F", "ℱ": "F"}
_ARCTIC_NAMES = {"D", "max", "Delta"}
_TOKEN = re.compile(r"\s*(?:(?P<nat>\d+)|(?P<name>[A-Za-z]+|Λ|Δ|𝓕|ℱ)|(?P<op>[-+*^(),]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "nat", "name", "op" or "end"
    value: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            out.append(Token("end", "", pos))
            return out
        m = _TOKEN.match(text, pos)
        if not m or m.group("op") == "-":
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "name":
            value = _ALIASES.get(value, value)
        out.append(Token(kind, value, m.start(kind)))
        pos = m.end()


def infer_order(tokens: List[Token]) -> str:
    names = {t.value for t in tokens if t.kind == "name"}
    if names & _ARCTIC_NAMES:
        return "arctic"
    return "p3" if "F" in names else "p2"


# -- builders: one per target algebra ----------------------------------------


class _ExprBuilder:
    """Second/third-order trees with sugar expanded."""

    allow_zero = False

    def __init__(self, order):
        self.order = order

    def nat(self, k, pos):
        if k == 0:
            raise ParseError("literal 0 is not a polynomial", pos, ["1", "N"])
        return ex.numeral(k)

    def name(self, tok, arg):
        v = tok.value
        if v == "N":
            return ex.N
        if v == "L":
            return ex.Lam(arg)
        if v == "F":
            if self.order != "p3":
                raise OrderMismatch("'F' needs third-order mode", tok.pos)
            return ex.AppF(arg)
        raise OrderMismatch(f"{v!r} is not allowed in {self.order} mode", tok.pos)

    def add(self, a, b):
        return ex.Add(a, b)

    def mul(self, a, b):
        return ex.Mul(a, b)

    def power(self, a, k):
        return ex.power(a, k)

    def max(self, args, tok):
        raise OrderMismatch("'max' needs arctic mode", tok.pos)


class _ArcticBuilder:
    def nat(self, k, pos):
        return ac.Const(k)

    def name(self, tok, arg):
        if tok.value == "D":
            return ac.DVAR
        if tok.value == "Delta":
            return ac.Delta(arg)
        raise OrderMismatch(f"{tok.value!r} is not allowed in arctic mode", tok.pos)

    def add(self, a, b):
        return ac.AAdd(a, b)

    def mul(self, a, b):
        return ac.AMul(a, b)

    def power(self, a, k):
        out = a
        for _ in range(k - 1):
            out = ac.AMul(out, a)
        return out

    def max(self, args, tok):
        return ac.Max(*args)


class _Poly1Builder:
    """Univariate first-order polynomials in a named variable (id 0)."""

    def __init__(self, var_name):
        self.var_name = var_name

    def nat(self, k, pos):
        return Poly1.const(k)

    def name(self, tok, arg):
        if tok.value == self.var_name:
            return Poly1.var(0)
        raise ParseError(f"unknown name {tok.value!r}", tok.pos, [self.var_name])

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def power(self, a, k):
        return a**k

    def max(self, args, tok):
        raise ParseError("'max' is not allowed here", tok.pos)


_CALLS = {"L", "F", "Delta"}


class _Parser:
    def __init__(self, tokens, builder, var_names):
        self.toks = tokens
        self.i = 0
        self.b = builder
        self.var_names = var_names

    @property
    def tok(self):
        return self.toks[self.i]

    def expect(self, value):
        if self.tok.value != value or self.tok.kind == "end":
            raise ParseError(f"unexpected {self.tok.value or 'end of input'!r}", self.tok.pos, [value])
        self.i += 1

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.value!r}", self.tok.pos, ["+", "*", "end of input"])
        return e

    def expr(self):
        e = self.term()
        while self.tok.value == "+":
            self.i += 1
            e = self.b.add(e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.tok.value == "*":
            self.i += 1
            e = self.b.mul(e, self.factor())
        return e

    def factor(self):
        e = self.atom()
        if self.tok.value == "^":
            self.i += 1
            tok = self.tok
            if tok.kind != "nat" or int(tok.value) < 1:
                raise ParseError("exponent must be a positive integer", tok.pos, ["NAT >= 1"])
            self.i += 1
            e = self.b.power(e, int(tok.value))
        return e

    def atom(self):
        tok = self.tok
        if tok.kind == "nat":
            self.i += 1
            return self.b.nat(int(tok.value), tok.pos)
        if tok.value == "(":
            self.i += 1
            e = self.expr()
            self.expect(")")
            return e
        if tok.kind == "name":
            self.i += 1
            if tok.value == "max":
                self.expect("(")
                args = [self.expr()]
                while self.tok.value == ",":
                    self.i += 1
                    args.append(self.expr())
                self.expect(")")
                if len(args) < 2:
                    raise ParseError("max needs at least two operands", tok.pos, [","])
                return self.b.max(args, tok)
            if tok.value in _CALLS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return self.b.name(tok, arg)
            if tok.value in self.var_names:
                return self.b.name(tok, None)
            raise ParseError(f"unknown name {tok.value!r}", tok.pos, sorted(self.var_names | _CALLS))
        raise ParseError(f"unexpected {tok.value or 'end of input'!r}", tok.pos, ["NAT", "N", "L", "(", "D", "max"])


@dataclass(frozen=True)
class SourceExpr:
    text: str
    ast: Expr
    order: str


def parse(text: str, order: str = "auto") -> SourceExpr:
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    tokens = tokenize(text)
    found = infer_order(tokens)
    if order == "auto":
        order = found
    if order == "arctic":
        wrong = [t for t in tokens if t.kind == "name" and t.value in {"N", "L", "F"}]
        if wrong:
            raise OrderMismatch(f"{wrong[0].value!r} cannot appear in an arctic term", wrong[0].pos)
        builder, var_names = _ArcticBuilder(), {"D"}
    else:
        wrong = [t for t in tokens if t.kind == "name" and t.value in _ARCTIC_NAMES]
        if wrong:
            raise OrderMismatch(f"{wrong[0].value!r} needs arctic mode", wrong[0].pos)
        builder, var_names = _ExprBuilder(order), {"N"}
    return SourceExpr(text, _Parser(tokens, builder, var_names).parse(), order)


def parse_expr(text: str, order: str = "auto") -> Expr:
    return parse(text, order).ast


def parse_poly1(text: str, var_name: str = "m") -> Poly1:
    """Univariate polynomial in ``var_name`` (variable id 0), e.g. ``m^2+3``."""
    return _Parser(tokenize(text), _Poly1Builder(var_name), {var_name}).parse()


def poly1_text(p: Poly1, var_name: str = "m") -> str:
    return p.to_text(lambda v: var_name)


# -- printing -----------------------------------------------------------------


def _numeral_value(e: Expr) -> Optional[int]:
    k = 0
    while isinstance(e, ex.Add):
        if not isinstance(e.right, ex.One):
            return None
        k += 1
        e = e.left
    return k + 1 if isinstance(e, ex.One) else None


def _power_of(e: Expr) -> Optional[Tuple[Expr, int]]:
    """``(base, k)`` when ``e`` is exactly ``power(base, k)`` with k >= 2."""
    if not isinstance(e, ex.Mul):
        return None
    factors = []
    while isinstance(e, ex.Mul):
        factors.append(e.right)
        e = e.left
    factors.append(e)
    if all(f == e for f in factors):
        return e, len(factors)
    return None


class _Printer:
    def __init__(self, style):
        arctic = style == "arctic"
        self.n = "D" if arctic else "N"
        self.lam = "Delta" if arctic else "L"
        self.memo = {}

    def sum(self, e: Expr) -> str:
        if isinstance(e, ex.Add) and _numeral_value(e) is None:
            right = self.sum(e.right)
            if isinstance(e.right, ex.Add) and _numeral_value(e.right) is None:
                right = f"({right})"
            return f"{self.sum(e.left)} + {right}"
        return self.term(e)

    def term(self, e: Expr) -> str:
        if isinstance(e, ex.Mul):
            pw = _power_of(e)
            if pw:
                return f"{self.atom(pw[0])}^{pw[1]}"
            right = e.right
            r = self.term(right) if _power_of(right) else self.atom(right)
            return f"{self.term(e.left)} * {r}"
        return self.atom(e)

    def atom(self, e: Expr) -> str:
        k = _numeral_value(e)
        if k is not None:
            return str(k)
        if isinstance(e, ex.Zero):
            return "0"
        if isinstance(e, ex.VarN):
            return self.n
        if isinstance(e, ex.Lam):
            return f"{self.lam}({self.sum(e.arg)})"
        if isinstance(e, ex.AppF):
            return f"F({self.sum(e.arg)})"
        if isinstance(e, (ex.Add, ex.Mul)):
            return f"({self.sum(e)})"
        raise TypeError(f"cannot print {type(e).__name__}")


def _arctic_text(t: Expr) -> str:
    def sum_(e):
        if isinstance(e, ac.AAdd):
            r = sum_(e.args[1])
            if isinstance(e.args[1], ac.AAdd):
                r = f"({r})"
            return f"{sum_(e.args[0])} + {r}"
        return term(e)

    def term(e):
        if isinstance(e, ac.AMul):
            r = e.args[1]
            rs = f"({sum_(r)})" if isinstance(r, (ac.AAdd, ac.AMul)) else atom(r)
            return f"{term(e.args[0])} * {rs}"
        return atom(e)

    def atom(e):
        if isinstance(e, ac.Const):
            return str(e.value)
        if isinstance(e, ac.Var):
            return "D" if e.var == ac.D else f"X{e.var}"
        if isinstance(e, ac.Max):
            return "max(" + ", ".join(sum_(a) for a in e.args) + ")"
        if isinstance(e, ac.Delta):
            return f"Delta({sum_(e.arg)})"
        if isinstance(e, (ac.AAdd, ac.AMul)):
            return f"({sum_(e)})"
        raise TypeError(f"cannot print {type(e).__name__}")

    return sum_(t)


def to_text(e: Expr, style: Optional[str] = None) -> str:
    """Canonical text of any tree.

    ``style="arctic"`` prints a second-order tree with ``N`` as ``D`` and
    ``L`` as ``Delta``; that is how limits of order-two degrees are shown.
    """
    if isinstance(e, ac.ArcticTerm):
        return _arctic_text(e)
    return _Printer(style).sum(e)


def expr_to_arctic(e: Expr) -> ac.ArcticTerm:
    """Read a second-order tree as an arctic term (``N`` -> ``D``, ``L`` -> ``Delta``)."""

    def step(node, rs):
        if isinstance(node, ex.One):
            return ac.UNIT
        if isinstance(node, ex.Zero):
            return ac.ZERO
        if isinstance(node, ex.VarN):
            return ac.DVAR
        if isinstance(node, ex.Add):
            return ac.AAdd(*rs)
        if isinstance(node, ex.Mul):
            return ac.AMul(*rs)
        if isinstance(node, ex.Lam):
            return ac.Delta(rs[0])
        raise TypeError(f"cannot convert {type(node).__name__}")

    return ex.fold(e, step)

