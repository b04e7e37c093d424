import itertools
import random

import pytest

from hopoly import expr as ex
from hopoly.dagnf import (
    LEAF_1,
    LEAF_N,
    Assignment,
    nf_build,
    nf_distinguish,
    nf_eq,
    nf_height,
    nf_merge,
    nf_to_poly2,
    sz_bound,
    sz_separate,
    to_dot,
    to_json,
    verify_distinct,
)
from hopoly.errors import DuplicatePolynomials, GridTooSmall, NoSeparatingPoint, UnknownNode
from hopoly.gen import random_poly, random_rewrite
from hopoly.monotone import MonotoneFn
from hopoly.poly1 import Poly1
from hopoly.poly2 import p2_depth, p2_eval
from hopoly.syntax import parse_expr

EX_1_1 = "L(L(L(N)^5)^3)*(L(N^2)+N^9)*N^4 + N^999*L(3*N^5+4*L(N+2)^8*L(7*N)+L(1)^6) + L(N^9)^50"


def P(text):
    return parse_expr(text, "p2")


def lam_subterms(e):
    out = []

    def visit(node, _):
        if isinstance(node, ex.Lam):
            out.append(node)

    ex.fold(e, visit)
    return out


def test_build_collapses_commuted_arguments():
    dag, root = nf_build(P("L(N+1) + L(1+N)"))
    (a,) = dag.lam_ids()
    assert dag.label(a) == Poly1.var(LEAF_N) + 1
    assert root.label == 2 * Poly1.var(a)


def test_build_two_nodes():
    dag, root = nf_build(P("L(N)*L(N) + L(N*N)"))
    a, b = dag.lam_ids()
    assert dag.label(a) == Poly1.var(LEAF_N)
    assert dag.label(b) == Poly1.var(LEAF_N) ** 2
    assert root.label == Poly1.var(a) ** 2 + Poly1.var(b)
    assert nf_eq(nf_to_poly2(dag, root), P("L(N)*L(N) + L(N*N)"))


def test_golden_dag_shape():
    e = P(EX_1_1)
    dag, root = nf_build(e)
    # one node per class of syntactically equivalent L-subterms
    classes = []
    for sub in lam_subterms(e):
        if not any(nf_eq(sub, c) for c in classes):
            classes.append(sub)
    assert len(dag.lam_ids()) == len(classes) == 9
    assert {nf_height(dag, v) for v in dag.lam_ids()} == {1, 2, 3}
    assert max(nf_height(dag, v) for v in dag.lam_ids()) == 3


def test_merge():
    dag, (r1, r2) = nf_merge([P("L(N)"), P("L(N)")])
    assert len(dag.lam_ids()) == 1 and r1 == r2
    dag, _ = nf_merge([P("L(N)"), P("L(N*N)")])
    assert len(dag.lam_ids()) == 2


def test_merge_after_rewrites_gives_equal_roots():
    rng = random.Random(4)
    for _ in range(100):
        A = random_poly(rng, 12, 4)
        B = A
        for _ in range(5):
            B = random_rewrite(rng, B)
        _, (ra, rb) = nf_merge([A, B])
        assert ra == rb


def test_eq_examples():
    assert nf_eq(P("L(N*(N+1))"), P("L(N*N+N)"))
    assert nf_eq(P("L(N)*1"), P("L(N)"))
    assert not nf_eq(P("L(N)"), ex.N)
    ell = MonotoneFn([(2, 5)], MonotoneFn.identity().tail)
    assert p2_eval(P("L(N)"), 2, ell) != p2_eval(ex.N, 2, ell)


def test_to_poly2():
    dag, root = nf_build(P("L(N)*L(N) + L(N*N)"))
    a = dag.lam_ids()[0]
    assert nf_to_poly2(dag, a) == P("L(N)")
    assert nf_to_poly2(dag, LEAF_1) == ex.ONE
    with pytest.raises(UnknownNode):
        nf_to_poly2(dag, 99)


def test_height():
    dag, _ = nf_build(P("L(L(N)+1)"))
    assert nf_height(dag, LEAF_1) == 0
    inner, outer = dag.lam_ids()
    assert nf_height(dag, inner) == 1
    assert nf_height(dag, outer) == 2


def test_round_trip_and_height_random():
    rng = random.Random(8)
    for _ in range(200):
        A = random_poly(rng, 12, 4)
        dag, root = nf_build(A)
        assert nf_eq(A, nf_to_poly2(dag, root))
        for v in dag.lam_ids():
            assert nf_height(dag, v) == p2_depth(nf_to_poly2(dag, v))


def test_build_is_deterministic():
    e = P(EX_1_1)
    d1, r1 = nf_build(e)
    d2, r2 = nf_build(e)
    assert d1.nodes == d2.nodes and r1 == r2


def test_sz_separate_examples():
    Y = Poly1.var(0)
    assert sz_separate([Y, Y + 1, Y * Y], {0: range(10)}) == {0: 2}
    assert sz_separate([Y], {0: [7, 3, 9]}) == {0: 3}
    X, Y = Poly1.var(0), Poly1.var(1)
    assert sz_separate([X, Y], {0: range(4), 1: range(4)}) == {0: 0, 1: 1}


def test_sz_separate_errors():
    Y = Poly1.var(0)
    with pytest.raises(DuplicatePolynomials):
        sz_separate([Y, Y], {0: range(10)})
    with pytest.raises(GridTooSmall):
        sz_separate([Y, Y + 1, Y * Y], {0: range(6)})
    with pytest.raises(NoSeparatingPoint):
        sz_separate([Y, Y * Y], {0: [0, 1]}, check_bound=False)


def random_family(rng):
    nvars = rng.randint(1, 3)
    fam = {}
    while len(fam) < rng.randint(2, 5):
        p = Poly1()
        for _ in range(rng.randint(1, 3)):
            m = Poly1.const(rng.randint(1, 3))
            for v in range(nvars):
                m = m * Poly1.var(v) ** rng.randint(0, 2)
            p = p + m
        fam[p] = None
    return list(fam), nvars


def test_sz_separate_random_families():
    rng = random.Random(10)
    for _ in range(200):
        fam, nvars = random_family(rng)
        size = sz_bound(fam) + 1
        grids = {v: range(o, o + size) for v, o in zip(range(nvars), (rng.randint(0, 20) for _ in range(nvars)))}
        pt = sz_separate(fam, grids)
        values = [p.evaluate(pt) for p in fam]
        assert len(set(values)) == len(values)


def test_distinguish_examples():
    dag, roots = nf_merge([P("L(N)"), P("L(N*N)")])
    a = nf_distinguish(dag, roots)
    vals = [1, a.n, a.ell(a.n), a.ell(a.n**2)]
    assert len(set(vals)) == 4
    assert verify_distinct(dag, roots, a)
    ok = Assignment(2, MonotoneFn([(2, 5), (4, 6)]))
    assert verify_distinct(dag, roots, ok)


def test_distinguish_single_node():
    dag, roots = nf_merge([P("L(N)")])
    a = nf_distinguish(dag, roots)
    assert a.n >= 2
    assert len({1, a.n, a.ell(a.n)}) == 3


def test_distinguish_golden():
    dag, roots = nf_merge([P(EX_1_1)])
    a = nf_distinguish(dag, roots)
    assert verify_distinct(dag, roots, a)
    vals = [a.values[v] for v in dag.lam_ids()] + [roots[0].label.evaluate(a.values)]
    assert len(set(vals)) == len(vals)
    # breakpoints are exactly the arguments assigned during construction
    assert sorted(a.ell.xs) == sorted(a.arguments.values())


def test_distinguish_intervals_disjoint():
    dag, roots = nf_merge([P(EX_1_1)])
    a = nf_distinguish(dag, roots)
    for (lo1, hi1), (lo2, hi2) in itertools.pairwise(a.intervals):
        assert hi1 < lo2


def test_verify_distinct_detects_collisions():
    dag, roots = nf_merge([P("L(N)"), P("L(N*N)")])
    assert not verify_distinct(dag, roots, Assignment(1, MonotoneFn.identity()))
    dag, roots = nf_merge([P("L(N)"), ex.N])
    assert not verify_distinct(dag, roots, Assignment(2, MonotoneFn.identity()))


def test_exports():
    dag, roots = nf_merge([P("L(N)*L(N) + L(N*N)")])
    dot = to_dot(dag, roots)
    assert 'label="Λ(N^2)"' in dot and "shape=box" in dot and "shape=ellipse" in dot
    js = to_json(dag, roots)
    assert '"kind": "lam"' in js and '"label": "Y2^2 + Y3"' in js
