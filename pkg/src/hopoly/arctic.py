"""Arctic (max-plus-times) terms of order one and two.

Terms are trees over natural constants, variables, ``+``, ``*``, ``max`` and,
for order two, applications ``Delta(.)`` of a monotone function variable.
Univariate order-one terms eventually coincide with an ordinary polynomial
(their *limit*); :func:`arc_lim` computes it together with a certified
threshold.  Order-two terms get a sound but incomplete limit procedure,
:func:`arc2_lim`, which reports :class:`Incomparable` when it cannot decide
which ``max`` operand wins.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from . import expr as ex
from .errors import MissingVariable, NotUnivariate
from .expr import Expr, fold
from .poly1 import GT, LT, Poly1, p1_eventual_compare

D = 0  # variable id of the degree variable


class ArcticTerm(Expr):
    __slots__ = ()


class Const(ArcticTerm):
    __slots__ = ()
    tag = "c"

    def __init__(self, value: int):
        if value < 0:
            raise ValueError("arctic constants are natural numbers")
        super().__init__(value)

    @property
    def value(self) -> int:
        return self.args[0]

    @property
    def children(self):
        return ()


class Var(ArcticTerm):
    __slots__ = ()
    tag = "v"

    def __init__(self, var: int = D):
        super().__init__(var)

    @property
    def var(self) -> int:
        return self.args[0]

    @property
    def children(self):
        return ()


class AAdd(ArcticTerm):
    __slots__ = ()
    tag = "a+"


class AMul(ArcticTerm):
    __slots__ = ()
    tag = "a*"


class Max(ArcticTerm):
    __slots__ = ()
    tag = "max"

    def __init__(self, *operands):
        flat = []
        for op in operands:
            flat.extend(op.args if isinstance(op, Max) else (op,))
        if len(flat) < 2:
            raise ValueError("max needs at least two operands")
        super().__init__(*flat)


class Delta(ArcticTerm):
    __slots__ = ()
    tag = "Delta"

    @property
    def arg(self):
        return self.args[0]


DVAR = Var(D)
ZERO = Const(0)
UNIT = Const(1)


def amax(*operands: ArcticTerm) -> ArcticTerm:
    """Flattening ``max``; a single operand is returned as is."""
    if len(operands) == 1:
        return operands[0]
    return Max(*operands)


def variables(t: ArcticTerm) -> set:
    return fold(t, lambda e, rs: {e.var} if isinstance(e, Var) else set().union(*rs))


def has_delta(t: ArcticTerm) -> bool:
    return ex.contains(t, Delta)


# -- evaluation ---------------------------------------------------------------


def _eval(t: ArcticTerm, var_value: Callable[[int], int], delta) -> int:
    def step(e, rs):
        if isinstance(e, Const):
            return e.value
        if isinstance(e, Var):
            return var_value(e.var)
        if isinstance(e, AAdd):
            return rs[0] + rs[1]
        if isinstance(e, AMul):
            return rs[0] * rs[1]
        if isinstance(e, Max):
            return max(rs)
        if isinstance(e, Delta):
            if delta is None:
                raise MissingVariable("Delta")
            return delta(rs[0])
        raise TypeError(f"not an arctic term: {e!r}")

    return fold(t, step)


def arc_eval(t: ArcticTerm, point: Mapping[int, int] | int) -> int:
    """Evaluate an order-one term.  An int ``point`` means ``{D: point}``."""
    if isinstance(point, int):
        point = {D: point}

    def lookup(v):
        try:
            return point[v]
        except KeyError:
            raise MissingVariable(v) from None

    return _eval(t, lookup, None)


def arc2_eval(t: ArcticTerm, d: int, delta: Callable[[int], int]) -> int:
    """Evaluate an order-two term at ``D = d`` with ``Delta`` read as ``delta``."""

    def lookup(v):
        if v != D:
            raise MissingVariable(v)
        return d

    return _eval(t, lookup, delta)


# -- order-one limits ---------------------------------------------------------


@dataclass(frozen=True)
class LimResult:
    """Asymptotic polynomial with a certified threshold.

    For every ``d >= threshold_d0`` the source term evaluates to
    ``poly(d)``.
    """

    poly: Poly1
    threshold_d0: int


def arc_lim(t: ArcticTerm, var: int = D) -> LimResult:
    extra = variables(t) - {var}
    if extra or has_delta(t):
        raise NotUnivariate(f"term is not univariate in variable {var}")

    def step(e, rs: List[LimResult]):
        if isinstance(e, Const):
            return LimResult(Poly1.const(e.value), 0)
        if isinstance(e, Var):
            return LimResult(Poly1.var(var), 0)
        if isinstance(e, AAdd):
            return LimResult(rs[0].poly + rs[1].poly, max(rs[0].threshold_d0, rs[1].threshold_d0))
        if isinstance(e, AMul):
            return LimResult(rs[0].poly * rs[1].poly, max(rs[0].threshold_d0, rs[1].threshold_d0))
        if isinstance(e, Max):
            best = rs[0].poly
            for r in rs[1:]:
                if p1_eventual_compare(r.poly, best, var)[0] == GT:
                    best = r.poly
            d0 = max(r.threshold_d0 for r in rs)
            for r in rs:
                order, t0 = p1_eventual_compare(best, r.poly, var)
                if order == GT:
                    d0 = max(d0, t0)
            return LimResult(best, d0)
        raise TypeError(f"unexpected node {e!r}")

    return fold(t, step)


def minimal_threshold(t: ArcticTerm, lim: LimResult, var: int = D, bound: int = 10_000) -> int:
    """Smallest ``d0`` with agreement from ``d0`` onwards.

    Exact when the certified threshold is at most ``bound``; otherwise the
    scan stops ``bound`` steps below it and returns the lowest value reached.
    """
    d = lim.threshold_d0
    floor = max(0, d - bound)
    while d > floor and arc_eval(t, {var: d - 1}) == lim.poly.evaluate({var: d - 1}):
        d -= 1
    return d


def arc_eq(s: ArcticTerm, t: ArcticTerm, var: int = D) -> bool:
    """Semantic equality of two univariate order-one terms on all of N."""
    ls, lt = arc_lim(s, var), arc_lim(t, var)
    if ls.poly != lt.poly:
        return False
    top = max(ls.threshold_d0, lt.threshold_d0)
    return all(arc_eval(s, {var: d}) == arc_eval(t, {var: d}) for d in range(top + 1))


# -- light simplification for display ---------------------------------------


def simplify(t: ArcticTerm) -> ArcticTerm:
    """Semantics-preserving cleanup used for printing degrees.

    Folds constants, drops ``+0`` and ``*1``, collects repeated summands as
    ``k*t``, merges repeated factors, and removes duplicate ``max`` operands.
    Nothing else is normalised; in particular dominated ``max`` operands
    stay.
    """

    def flat(e, cls, out):
        if isinstance(e, cls):
            flat(e.args[0], cls, out)
            flat(e.args[1], cls, out)
        else:
            out.append(e)
        return out

    def build(cls, parts):
        acc = parts[0]
        for p in parts[1:]:
            acc = cls(acc, p)
        return acc

    def step(e, rs):
        if isinstance(e, (Const, Var)):
            return e
        if isinstance(e, Delta):
            return Delta(rs[0])
        if isinstance(e, Max):
            ops, seen, const = [], set(), None
            for r in flat_max(rs):
                if isinstance(r, Const):
                    if const is None:
                        const = len(ops)
                        ops.append(r)
                    elif r.value > ops[const].value:
                        ops[const] = r
                elif r not in seen:
                    seen.add(r)
                    ops.append(r)
            return amax(*ops)
        if isinstance(e, AAdd):
            parts = flat(AAdd(rs[0], rs[1]), AAdd, [])
            const = sum(p.value for p in parts if isinstance(p, Const))
            counts: Dict[ArcticTerm, int] = {}
            for p in parts:
                if not isinstance(p, Const):
                    counts[p] = counts.get(p, 0) + 1
            terms = [p if k == 1 else _scale(k, p) for p, k in counts.items()]
            if const or not terms:
                terms.append(Const(const))
            return build(AAdd, terms)
        if isinstance(e, AMul):
            parts = flat(AMul(rs[0], rs[1]), AMul, [])
            const = 1
            for p in parts:
                if isinstance(p, Const):
                    const *= p.value
            if const == 0:
                return ZERO
            counts = {}
            for p in parts:
                if not isinstance(p, Const):
                    counts[p] = counts.get(p, 0) + 1
            factors = [p if k == 1 else build(AMul, [p] * k) for p, k in counts.items()]
            if not factors:
                return Const(const)
            body = build(AMul, factors) if len(factors) > 1 else factors[0]
            return body if const == 1 else AMul(Const(const), body)
        raise TypeError(f"unexpected node {e!r}")

    def flat_max(rs):
        out = []
        for r in rs:
            out.extend(r.args if isinstance(r, Max) else (r,))
        return out

    return fold(t, step)


def _scale(k: int, t: ArcticTerm) -> ArcticTerm:
    if isinstance(t, AMul) and isinstance(t.args[0], Const):
        return AMul(Const(k * t.args[0].value), t.args[1])
    return AMul(Const(k), t)


# -- order-two substitutions --------------------------------------------------


def arc2_subst_D(t: ArcticTerm, s: ArcticTerm) -> ArcticTerm:
    """Replace every ``D`` leaf of ``t`` by ``s``."""

    def step(e, rs):
        if isinstance(e, Var):
            return s if e.var == D else e
        if isinstance(e, Const):
            return e
        return type(e)(*rs)

    return fold(t, step)


def arc2_subst_Delta(t: ArcticTerm, s: ArcticTerm) -> ArcticTerm:
    """Replace every ``Delta(a)`` by ``s`` with ``D := a`` (rewritten first)."""

    def step(e, rs):
        if isinstance(e, (Var, Const)):
            return e
        if isinstance(e, Delta):
            return arc2_subst_D(s, rs[0])
        return type(e)(*rs)

    return fold(t, step)


# -- order-two limits ---------------------------------------------------------


@dataclass(frozen=True)
class DeltaFloor:
    """The pointwise lower bound ``m -> coeff * m^power`` on ``delta``."""

    coeff: int = 1
    power: int = 1

    def __call__(self, m: int) -> int:
        return self.coeff * m**self.power

    def join(self, other: "DeltaFloor") -> "DeltaFloor":
        return DeltaFloor(max(self.coeff, other.coeff), max(self.power, other.power))

    def describe(self) -> str:
        if self.coeff == 1 and self.power == 1:
            return "identity"
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        p = "" if self.power == 1 else f"^{self.power}"
        return f"m -> {c}m{p}"


IDENTITY_FLOOR = DeltaFloor()


@dataclass(frozen=True)
class Lim2Result:
    """Non-arctic limit of an order-two term.

    ``poly`` is a second-order polynomial tree read with ``N`` as ``D`` and
    ``Lam`` as ``Delta``.  Agreement holds for ``d >= threshold_d0`` and
    every monotone ``delta`` bounded below by ``delta_floor`` pointwise.
    """

    poly: Expr
    threshold_d0: int
    delta_floor: DeltaFloor = IDENTITY_FLOOR


@dataclass(frozen=True)
class Incomparable:
    """No ``max`` operand could be shown to dominate the others."""

    max_node: str
    left: str
    right: str
    operands: Tuple[str, ...] = field(default=())

    def describe(self) -> str:
        return f"incomparable operands in {self.max_node}: {self.left} vs {self.right}"


@dataclass(frozen=True)
class _Cert:
    d0: int = 1
    floor: DeltaFloor = IDENTITY_FLOOR

    def join(self, other: "_Cert") -> "_Cert":
        return _Cert(max(self.d0, other.d0), self.floor.join(other.floor))


class _Cone:
    """Dominance between limits, flattened as polynomials over ``D`` and
    ``Delta``-atoms (interned in a normal-form DAG)."""

    def __init__(self):
        from .dagnf import LEAF_N, NormalDag

        self.dag = NormalDag()
        self.dvar = LEAF_N
        self._dom: Dict[Tuple[Poly1, Poly1], Optional[_Cert]] = {}
        self._pos: Dict[Poly1, bool] = {}

    def flatten(self, e: Expr) -> Poly1:
        return self.dag.flatten(e)

    def _split(self, mono):
        k = 0
        atoms = []
        for v, e in mono:
            if v == self.dvar:
                k = e
            else:
                atoms.extend([v] * e)
        return k, atoms

    def positive(self, p: Poly1) -> bool:
        """``p >= 1`` for ``d >= 1`` and ``delta >= identity``."""
        hit = self._pos.get(p)
        if hit is not None:
            return hit
        ok = p.constant_term() > 0 or any(
            all(self.positive(self.dag.label(a)) for a in self._split(m)[1]) for m, _ in p.items()
        )
        self._pos[p] = ok
        return ok

    def dominates(self, a: Poly1, b: Poly1) -> Optional[_Cert]:
        key = (a, b)
        if key in self._dom:
            return self._dom[key]
        self._dom[key] = None  # guards against cycles; labels are well-founded anyway
        cert = self._dominates(a, b)
        self._dom[key] = cert
        return cert

    def _dominates(self, a: Poly1, b: Poly1) -> Optional[_Cert]:
        if a == b:
            return _Cert()
        if not b:
            return _Cert()
        plain = {self.dvar}
        if a.variables() <= plain and b.variables() <= plain:
            order, t0 = p1_eventual_compare(a, b, self.dvar)
            if order == LT:
                return None
            return _Cert(max(1, t0))
        a_terms = [(self._split(m), c) for m, c in a.sorted_terms()]
        b_terms = [(self._split(m), c) for m, c in b.sorted_terms()]
        # relation table: rel[i][j] for b-term i vs a-term j
        rel = [[self._term_relation(at, bt) for (at, _) in a_terms] for (bt, _) in b_terms]
        return self._assign(a_terms, b_terms, rel)

    def _term_relation(self, at, bt):
        """Compare unit products ``a = D^j * prod Delta(A_i)`` and
        ``b = D^k * prod Delta(B_i)``.

        Returns a list of options ``(kind, cert, need_power)`` where kind is
        ``"weak"`` (``a >= b``) or ``"strict"`` (``a`` outgrows any constant
        multiple of ``b``).  ``need_power`` is the floor exponent required
        when strictness comes from an unused Delta atom.
        """
        (j, a_atoms), (k, b_atoms) = at, bt
        if len(b_atoms) > len(a_atoms):
            return []
        options = []
        dpoly = Poly1.var(self.dvar)
        for image in itertools.permutations(range(len(a_atoms)), len(b_atoms)):
            cert = _Cert()
            ok = True
            for bi, ai in zip(b_atoms, image):
                c = self.dominates(self.dag.label(a_atoms[ai]), self.dag.label(bi))
                if c is None:
                    ok = False
                    break
                cert = cert.join(c)
            if not ok:
                continue
            leftover = [a_atoms[i] for i in range(len(a_atoms)) if i not in image]
            if not all(self.positive(self.dag.label(x)) for x in leftover):
                continue
            if j > k:
                options.append(("strict", cert, 0))
                continue
            if leftover:
                if k > j:
                    for x in leftover:
                        c = self.dominates(self.dag.label(x), dpoly)
                        if c is not None:
                            options.append(("strict", cert.join(c), k - j))
                            break
                else:
                    options.append(("strict", cert, 1))
            if j == k:
                options.append(("weak", cert, 0))
        return options

    def _assign(self, a_terms, b_terms, rel) -> Optional[_Cert]:
        caps = [c for _, c in a_terms]
        weak_used = [0] * len(a_terms)
        strict_sum = [0] * len(a_terms)
        strict_pow = [0] * len(a_terms)

        def finish(cert):
            for ai in range(len(a_terms)):
                s = strict_sum[ai]
                if not s:
                    continue
                if strict_pow[ai]:
                    cert = cert.join(_Cert(1, DeltaFloor(s, strict_pow[ai])))
                else:
                    cert = cert.join(_Cert(s))
            return cert

        def go(i, cert):
            if i == len(b_terms):
                return finish(cert)
            cb = b_terms[i][1]
            for ai, opts in enumerate(rel[i]):
                for kind, c, need in opts:
                    if kind == "strict":
                        reserve = 0 if strict_sum[ai] else 1
                        if weak_used[ai] + reserve > caps[ai]:
                            continue
                        if strict_sum[ai] and (strict_pow[ai] == 0) != (need == 0):
                            continue
                        strict_sum[ai] += cb
                        old = strict_pow[ai]
                        strict_pow[ai] = max(old, need)
                        out = go(i + 1, cert.join(c))
                        strict_sum[ai] -= cb
                        strict_pow[ai] = old
                    else:
                        reserve = 1 if strict_sum[ai] else 0
                        if weak_used[ai] + cb + reserve > caps[ai]:
                            continue
                        weak_used[ai] += cb
                        out = go(i + 1, cert.join(c))
                        weak_used[ai] -= cb
                    if out is not None:
                        return out
            return None

        return go(0, _Cert())


def arc2_lim(t: ArcticTerm) -> Lim2Result | Incomparable:
    """Limit of an order-two arctic term by cone dominance.

    Each ``max`` node is resolved to the first operand whose limit provably
    dominates all others for large ``d`` and large enough ``delta``.  The
    rules are sound and deliberately incomplete: ``max(D, Delta(1))`` has no
    limit at all, and is reported as :class:`Incomparable`.
    """
    from .syntax import to_text

    cone = _Cone()

    class _Stop(Exception):
        pass

    def step(e, rs):
        if isinstance(e, Const):
            return ex.numeral(e.value), _Cert(0)
        if isinstance(e, Var):
            if e.var != D:
                raise NotUnivariate(f"unexpected variable {e.var}")
            return ex.N, _Cert(0)
        cert = _Cert(0)
        for _, c in rs:
            cert = cert.join(c)
        if isinstance(e, AAdd):
            return ex.add(rs[0][0], rs[1][0]), cert
        if isinstance(e, AMul):
            return ex.mul(rs[0][0], rs[1][0]), cert
        if isinstance(e, Delta):
            return ex.Lam(rs[0][0]), cert
        if isinstance(e, Max):
            flats = [cone.flatten(r[0]) for r in rs]
            for i, fi in enumerate(flats):
                acc = cert
                for j, fj in enumerate(flats):
                    if i == j:
                        continue
                    c = cone.dominates(fi, fj)
                    if c is None:
                        break
                    acc = acc.join(c)
                else:
                    return rs[i][0], acc
            texts = tuple(to_text(r[0], style="arctic") for r in rs)
            pair = _undominated_pair(cone, flats)
            raise _Stop(
                Incomparable(
                    max_node=f"max({', '.join(texts)})",
                    left=texts[pair[0]],
                    right=texts[pair[1]],
                    operands=texts,
                )
            )
        raise TypeError(f"unexpected node {e!r}")

    try:
        poly, cert = fold(t, step)
    except _Stop as stop:
        return stop.args[0]
    return Lim2Result(poly, cert.d0, cert.floor)


def _undominated_pair(cone: _Cone, flats) -> Tuple[int, int]:
    for i, j in itertools.combinations(range(len(flats)), 2):
        if cone.dominates(flats[i], flats[j]) is None and cone.dominates(flats[j], flats[i]) is None:
            return i, j
    # no mutually incomparable pair, but no single winner either
    for j in range(1, len(flats)):
        if cone.dominates(flats[0], flats[j]) is None:
            return 0, j
    return 0, 1
