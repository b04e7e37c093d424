"""Labelled-DAG normal form for second-order polynomials.

Every ``Lam(...)`` sub-expression becomes a node labelled with its argument,
flattened to a first-order polynomial over the variable ``N`` and the nodes
of the ``Lam`` sub-expressions it contains.  Nodes are interned by label, so
syntactically equivalent sub-expressions share one node and two polynomials
are equivalent exactly when their root labels coincide.

Node ids: ``0`` is the leaf 1, ``1`` is the leaf ``N``; ``Lam`` nodes follow
in creation order, children always before parents.

Flattening distributes products over sums completely, so the label of a
node can be exponentially larger than its source expression.  That is fine
for hand-sized inputs and is not guarded against.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import expr as ex
from .errors import (
    DuplicatePolynomials,
    GridTooSmall,
    MissingVariable,
    NoSeparatingPoint,
    UnknownNode,
    VerificationFailed,
)
from .expr import Expr
from .monotone import AffineSlope, MonotoneFn
from .poly1 import Poly1

LEAF_1 = 0
LEAF_N = 1


@dataclass(frozen=True)
class Node:
    id: int
    kind: str  # "1", "N" or "L"
    label: Optional[Poly1]
    children: Tuple[int, ...]
    height: int


@dataclass(frozen=True)
class RootExpr:
    """Root labelling: a polynomial over node ids, without the ``Lam``."""

    label: Poly1


class NormalDag:
    """Append-only, hash-consed store of normal-form nodes.

    Interning is single-writer: concurrent builds into one store must be
    serialised by the caller.  Reads are safe.
    """

    def __init__(self):
        self.nodes: List[Node] = [
            Node(LEAF_1, "1", None, (), 0),
            Node(LEAF_N, "N", None, (), 0),
        ]
        self._index: Dict[Poly1, int] = {}

    def __len__(self):
        return len(self.nodes)

    def node(self, nid: int) -> Node:
        if not isinstance(nid, int) or not 0 <= nid < len(self.nodes):
            raise UnknownNode(nid)
        return self.nodes[nid]

    def label(self, nid: int) -> Poly1:
        return self.node(nid).label

    def lam_ids(self) -> List[int]:
        return [n.id for n in self.nodes if n.kind == "L"]

    def intern(self, label: Poly1) -> int:
        nid = self._index.get(label)
        if nid is not None:
            return nid
        for v in label.variables():
            if v == LEAF_1 or not 0 <= v < len(self.nodes):
                raise UnknownNode(v)
        kids = set(label.variables())
        if label.constant_term() or not label:
            kids.add(LEAF_1)
        children = tuple(sorted(kids))
        height = 1 + max(self.nodes[c].height for c in children)
        nid = len(self.nodes)
        self.nodes.append(Node(nid, "L", label, children, height))
        self._index[label] = nid
        return nid

    def flatten(self, e: Expr) -> Poly1:
        """Monomial normal form of ``e`` over ``N`` and interned ``Lam`` nodes."""

        def step(node, rs):
            if isinstance(node, ex.One):
                return Poly1.const(1)
            if isinstance(node, ex.Zero):
                return Poly1()
            if isinstance(node, ex.VarN):
                return Poly1.var(LEAF_N)
            if isinstance(node, ex.Add):
                return rs[0] + rs[1]
            if isinstance(node, ex.Mul):
                return rs[0] * rs[1]
            if isinstance(node, ex.Lam):
                return Poly1.var(self.intern(rs[0]))
            raise TypeError(f"not a second-order polynomial node: {node!r}")

        return ex.fold(e, step)

    def add_root(self, e: Expr) -> RootExpr:
        return RootExpr(self.flatten(e))

    def names(self, nid: int) -> str:
        if nid == LEAF_N:
            return "N"
        if nid == LEAF_1:
            return "1"
        return f"Y{nid}"


# -- construction and equality ------------------------------------------------


def nf_build(P: Expr) -> Tuple[NormalDag, RootExpr]:
    dag = NormalDag()
    return dag, dag.add_root(P)


def nf_merge(Ps: Iterable[Expr]) -> Tuple[NormalDag, List[RootExpr]]:
    dag = NormalDag()
    return dag, [dag.add_root(P) for P in Ps]


def nf_eq(P: Expr, Q: Expr) -> bool:
    _, (rp, rq) = nf_merge([P, Q])
    return rp.label == rq.label


def nf_to_poly2(dag: NormalDag, target: int | RootExpr) -> Expr:
    """Unfold a node or root back into a second-order polynomial tree."""
    memo: Dict[int, Expr] = {}

    def node_expr(nid: int) -> Expr:
        if nid in memo:
            return memo[nid]
        node = dag.node(nid)
        if node.kind == "1":
            out = ex.ONE
        elif node.kind == "N":
            out = ex.N
        else:
            out = ex.Lam(poly_expr(node.label))
        memo[nid] = out
        return out

    def poly_expr(p: Poly1) -> Expr:
        if not p:
            return ex.ZERO
        terms = []
        for mono, c in p.sorted_terms():
            factors = [ex.power(node_expr(v), e) for v, e in mono]
            body = factors[0] if factors else None
            for f in factors[1:]:
                body = ex.Mul(body, f)
            if body is None:
                terms.append(ex.numeral(c))
            elif c == 1:
                terms.append(body)
            else:
                terms.append(ex.Mul(ex.numeral(c), body))
        out = terms[0]
        for t in terms[1:]:
            out = ex.Add(out, t)
        return out

    if isinstance(target, RootExpr):
        return poly_expr(target.label)
    return node_expr(target)


def nf_height(dag: NormalDag, nid: int) -> int:
    """Longest distance to a leaf; equals the ``Lam`` nesting depth."""
    return dag.node(nid).height


# -- evaluation ---------------------------------------------------------------


def node_values(dag: NormalDag, n: int, ell) -> Dict[int, int]:
    vals = {LEAF_1: 1, LEAF_N: n}
    for node in dag.nodes[2:]:
        vals[node.id] = ell(node.label.evaluate(vals))
    return vals


def _entities(dag: NormalDag, roots: Sequence[RootExpr]) -> List[Tuple[str, Poly1]]:
    """Distinct polynomials to separate: every node, then every root that is
    not literally a node or a duplicate of an earlier root."""
    ents: List[Tuple[str, Poly1]] = [("node", Poly1.var(v)) for v in range(len(dag.nodes))]
    seen = {Poly1.const(1)} | {Poly1.var(v) for v in range(1, len(dag.nodes))}
    for r in roots:
        if r.label not in seen:
            seen.add(r.label)
            ents.append(("root", r.label))
    return ents


# -- Schwartz-Zippel separation ----------------------------------------------


def sz_bound(polys: Sequence[Poly1]) -> int:
    """``d*K*(K-1)/2``: grids strictly larger than this always separate."""
    k = len(polys)
    d = max((p.total_degree() or 0 for p in polys), default=0)
    return d * k * (k - 1) // 2


def sz_separate(
    polys: Sequence[Poly1],
    grids: Mapping[int, Iterable[int]],
    check_bound: bool = True,
) -> Dict[int, int]:
    """Lexicographically first grid point where all ``polys`` differ.

    Variables are scanned in increasing id order, values in increasing
    order.  With ``check_bound`` the grids must beat :func:`sz_bound`, which
    guarantees success; without it the scan may come up empty, in which case
    :class:`NoSeparatingPoint` is raised.
    """
    polys = list(polys)
    if len(set(polys)) != len(polys):
        raise DuplicatePolynomials("polynomials must be pairwise distinct")
    variables = sorted(grids)
    used = set().union(*(p.variables() for p in polys)) if polys else set()
    missing = used - set(variables)
    if missing:
        raise MissingVariable(min(missing))
    axes = [g if isinstance(g, range) else sorted(set(g)) for g in (grids[v] for v in variables)]
    if check_bound:
        bound = sz_bound(polys)
        for v, axis in zip(variables, axes):
            if len(axis) <= bound:
                raise GridTooSmall(f"grid for variable {v} has {len(axis)} points, needs > {bound}")
    if any(len(a) == 0 for a in axes):
        raise NoSeparatingPoint("empty grid")

    idx = [0] * len(axes)
    while True:
        point = {v: axes[i][idx[i]] for i, v in enumerate(variables)}
        values = [p.evaluate(point) for p in polys]
        if len(set(values)) == len(values):
            return point
        i = len(axes) - 1
        while i >= 0:
            idx[i] += 1
            if idx[i] < len(axes[i]):
                break
            idx[i] = 0
            i -= 1
        if i < 0:
            raise NoSeparatingPoint("no grid point separates the polynomials")


# -- distinguishing assignments -----------------------------------------------


@dataclass
class Assignment:
    n: int
    ell: MonotoneFn
    values: Dict[int, int] = field(default_factory=dict)
    arguments: Dict[int, int] = field(default_factory=dict)
    intervals: List[Tuple[int, int]] = field(default_factory=list)
    candidates: Dict[int, range] = field(default_factory=dict)


def _separation_family(groups, fixed: Mapping[int, int], current: set) -> List[Poly1]:
    """Coefficient polynomials in ``current`` whose pairwise distinctness keeps
    every group pairwise distinct once ``fixed`` and ``current`` are
    substituted (later variables stay symbolic)."""
    family: Dict[Poly1, None] = {}
    zero = Poly1()
    for group in groups:
        split = [p.substitute(fixed).split(current) for p in group]
        for i in range(len(split)):
            for j in range(i + 1, len(split)):
                a, b = split[i], split[j]
                for mono in sorted(set(a) | set(b), key=_mono_order):
                    ca, cb = a.get(mono, zero), b.get(mono, zero)
                    if ca != cb:
                        family[ca] = None
                        family[cb] = None
                        break
                else:
                    raise VerificationFailed("two entities collapsed to the same polynomial")
    return list(family)


def _mono_order(m):
    return (len(m), m)


def nf_distinguish(dag: NormalDag, roots: Sequence[RootExpr] = ()) -> Assignment:
    """Build ``(n, ell)`` separating every node and every distinct root.

    Heights are processed bottom-up.  At height ``h`` the arguments of the
    height-``h`` nodes are already known; each node gets a block of fresh
    candidate values above everything used so far, blocks ordered like the
    arguments (so ``ell`` stays increasing).  A Schwartz-Zippel scan over
    the blocks picks the values that keep all higher labels, and all roots,
    pairwise distinct as polynomials in the variables not yet fixed.
    """
    lam = dag.lam_ids()
    levels: Dict[int, List[int]] = {}
    for nid in lam:
        levels.setdefault(dag.node(nid).height, []).append(nid)
    top = max(levels, default=0)

    ents = _entities(dag, roots)
    root_group = [p for _, p in ents] + [Poly1.const(1)]
    root_group = list(dict.fromkeys(root_group))
    groups_by_level = {h: [dag.label(v) for v in levels.get(h, [])] for h in range(1, top + 1)}

    fixed: Dict[int, int] = {}
    a = Assignment(n=0, ell=MonotoneFn.identity())
    breakpoints: List[Tuple[int, int]] = []
    ceiling = 1

    for h in range(0, top + 1):
        if h == 0:
            current = [LEAF_N]
            args = {}
        else:
            current = sorted(levels[h], key=lambda v: dag.label(v).evaluate(fixed))
            args = {v: dag.label(v).evaluate(fixed) for v in current}
            if len(set(args.values())) != len(args):
                raise VerificationFailed(f"arguments at height {h} collide")
            a.intervals.append((min(args.values()), max(args.values())))
        groups = [g for lvl, g in groups_by_level.items() if lvl > h] + [root_group]
        family = _separation_family(groups, fixed, set(current))
        block = sz_bound(family) + 1
        if h == 0:
            grids = {LEAF_N: range(2, 2 + block)}
        else:
            base = max([ceiling, *args.values()]) + 1
            grids = {v: range(base + i * block, base + (i + 1) * block) for i, v in enumerate(current)}
        a.candidates.update(grids)
        point = sz_separate(family, grids)
        fixed.update(point)
        for v in current:
            if h:
                breakpoints.append((args[v], point[v]))
                a.arguments[v] = args[v]
            ceiling = max(ceiling, point[v], args.get(v, 0))

    a.n = fixed[LEAF_N]
    if breakpoints:
        a.ell = MonotoneFn(sorted(breakpoints), AffineSlope(1))
    a.values = node_values(dag, a.n, a.ell)
    if not verify_distinct(dag, roots, a):
        raise VerificationFailed("constructed assignment does not separate")
    return a


def verify_distinct(dag: NormalDag, roots: Sequence[RootExpr], a) -> bool:
    """Evaluate every node and root under ``(a.n, a.ell)``; check that
    distinct entities get distinct values."""
    vals = node_values(dag, a.n, a.ell)
    seen = set()
    for _, poly in _entities(dag, roots):
        v = poly.evaluate(vals)
        if v in seen:
            return False
        seen.add(v)
    return True


# -- export -------------------------------------------------------------------


def label_text(dag: NormalDag, p: Poly1) -> str:
    return p.to_text(dag.names)


def to_json(dag: NormalDag, roots: Sequence[RootExpr] = ()) -> str:
    nodes = []
    for node in dag.nodes:
        nodes.append(
            {
                "id": node.id,
                "kind": {"1": "leaf1", "N": "leafN", "L": "lam"}[node.kind],
                "label": None if node.label is None else label_text(dag, node.label),
                "children": list(node.children),
            }
        )
    return json.dumps({"nodes": nodes, "roots": [{"label": label_text(dag, r.label)} for r in roots]}, indent=2)


def to_dot(dag: NormalDag, roots: Sequence[RootExpr] = ()) -> str:
    lines = ["digraph normal_form {", "  rankdir=BT;"]
    for node in dag.nodes:
        if node.kind == "L":
            text = f"Λ({label_text(dag, node.label)})"
            lines.append(f'  n{node.id} [shape=box, label="{text}"];')
        else:
            lines.append(f'  n{node.id} [shape=circle, label="{node.kind}"];')
    for node in dag.nodes:
        for c in node.children:
            lines.append(f"  n{c} -> n{node.id};")
    for i, r in enumerate(roots):
        lines.append(f'  r{i} [shape=ellipse, label="{label_text(dag, r.label)}"];')
        kids = set(r.label.variables())
        if r.label.constant_term():
            kids.add(LEAF_1)
        for c in sorted(kids):
            lines.append(f"  n{c} -> r{i};")
    lines.append("}")
    return "\n".join(lines)
