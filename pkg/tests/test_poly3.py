import random

import pytest

from hopoly import arctic as ac
from hopoly import expr as ex
from hopoly.arctic import Incomparable, arc2_eval
from hopoly.errors import DuplicateInputs
from hopoly.gen import random_poly
from hopoly.monotone import MonotoneFn
from hopoly.poly1 import Poly1
from hopoly.poly3 import (
    Assignment3,
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
from hopoly.syntax import parse_expr


def P3(text):
    return parse_expr(text, "p3")


def op(text):
    return Operator2(template=parse_expr(text, "p2"))


def double(m):
    return 2 * m


def test_eval_F_applies_operator_to_argument_function():
    # F(N) is phi(identity) at n; with phi(f) = f(.)+1 through L this is n+1
    assert p3_eval(P3("F(N)"), 3, double, op("L(N)+1")) == 4
    assert p3_eval(ex.ONE, 5, double, op("N")) == 1
    # template N ignores its function argument
    assert p3_eval(P3("F(N*N)"), 2, double, op("N")) == 2
    assert p3_eval(P3("F(N*N)"), 2, double, op("L(N)")) == 4
    assert p3_eval(P3("F(N*N)"), 2, double, op("L(L(N))")) == 16


def test_eval_mixes_L_and_F():
    # F(L(N)) with phi(f)(m) = f(m)*m and ell = 2m
    assert p3_eval(P3("F(L(N))"), 3, double, op("L(N)*N")) == 18
    assert p3_eval(P3("L(F(N))"), 3, double, op("L(N)+N")) == 12


def test_builtin_operator():
    phi = Operator2(builtin=lambda f: (lambda m: f(m + 1)))
    assert p3_eval(P3("F(N*N)"), 3, double, phi) == 16
    with pytest.raises(ValueError):
        Operator2()


def test_compositions_examples():
    assert p3_star(P3("F(N)"), P3("N*N")) == P3("F(N*N)")
    Q = P3("F(N)+L(1)")
    assert p3_circ(P3("L(N)"), Q) == Q
    assert p3_opcirc(ex.N, Q) == ex.N
    assert p3_opcirc(P3("F(N)"), P3("L(N)")) == ex.N
    assert p3_opcirc(P3("F(N)*L(N)"), P3("L(N)+1")) == ex.Mul(ex.Add(ex.N, ex.ONE), P3("L(N)"))


ELLS = [lambda m: m + 1, double, lambda m: m * m + 1]
PHIS = ["L(N)", "L(N)*L(N)", "L(N)+N", "L(L(N))+1", "N*L(N)+2"]


def test_star_semantics_with_pass_through_operator():
    rng = random.Random(11)
    phi = op("L(N)")
    for _ in range(200):
        P, Q = random_poly(rng, 8, 3, third=True), random_poly(rng, 8, 3, third=True)
        for n in (1, 2, 3):
            ell = lambda m: m + 1  # noqa: E731
            inner = p3_eval(Q, n, ell, phi)
            assert p3_eval(p3_star(P, Q), n, ell, phi) == p3_eval(P, inner, ell, phi)


def test_star_semantics_when_outer_has_no_F():
    rng = random.Random(12)
    for _ in range(200):
        P, Q = random_poly(rng, 8, 3), random_poly(rng, 8, 3, third=True)
        phi, ell = op(rng.choice(PHIS)), rng.choice(ELLS)
        n = rng.randint(1, 3)
        assert p3_eval(p3_star(P, Q), n, ell, phi) == p3_eval(P, p3_eval(Q, n, ell, phi), ell, phi)


def test_star_semantics_can_differ_under_F():
    # phi that ignores its function: F(N)*Q is F(Q), which reads n, not Q(n)
    P, Q = P3("F(N)"), P3("N*N")
    phi = op("N")
    assert p3_eval(p3_star(P, Q), 3, double, phi) == 3
    assert p3_eval(P, p3_eval(Q, 3, double, phi), double, phi) == 9


def test_circ_semantics_when_inner_has_no_F():
    rng = random.Random(13)
    for _ in range(200):
        P, Q = random_poly(rng, 8, 3, third=True), random_poly(rng, 8, 3)
        phi, ell = op(rng.choice(PHIS)), rng.choice(ELLS)
        n = rng.randint(1, 3)
        lhs = p3_eval(p3_circ(P, Q), n, ell, phi)
        rhs = p3_eval(P, n, lambda m: p3_eval(Q, m, ell, phi), phi)
        assert lhs == rhs


def test_opcirc_semantics_when_inner_has_no_F():
    rng = random.Random(14)
    for _ in range(200):
        P, Q = random_poly(rng, 8, 3, third=True), random_poly(rng, 8, 3)
        phi, ell = op(rng.choice(PHIS)), rng.choice(ELLS)
        n = rng.randint(1, 3)
        lhs = p3_eval(p3_opcirc(P, Q), n, ell, phi)
        psi = Operator2(builtin=lambda f: (lambda m: p3_eval(Q, m, f, phi)))
        assert lhs == p3_eval(P, n, ell, psi)


def test_all_composition_laws_with_pass_through_operator():
    rng = random.Random(16)
    phi = op("L(N)")
    for _ in range(200):
        P, Q = random_poly(rng, 8, 3, third=True), random_poly(rng, 8, 3, third=True)
        ell, n = rng.choice(ELLS), rng.randint(1, 3)
        assert p3_eval(p3_circ(P, Q), n, ell, phi) == p3_eval(P, n, lambda m: p3_eval(Q, m, ell, phi), phi)
        psi = Operator2(builtin=lambda f: (lambda m: p3_eval(Q, m, f, phi)))
        assert p3_eval(p3_opcirc(P, Q), n, ell, phi) == p3_eval(P, n, ell, psi)


def test_circ_semantics_can_differ_when_inner_has_F():
    # the result nests Q inside F, where phi reads n instead of Q(n)
    P, Q = P3("L(L(N))"), P3("F(N)+N")
    phi = op("N*N")
    lhs = p3_eval(p3_circ(P, Q), 2, double, phi)
    rhs = p3_eval(P, 2, lambda m: p3_eval(Q, m, double, phi), phi)
    assert lhs != rhs


def test_opcirc_example_sampled():
    P, Q = P3("F(N)"), P3("L(N)")
    R = p3_opcirc(P, Q)
    for n in range(5):
        psi = Operator2(builtin=lambda f: (lambda m: p3_eval(Q, m, f, op("N"))))
        assert p3_eval(R, n, double, op("N")) == p3_eval(P, n, double, psi) == n


def test_DEG_examples():
    got = p3_DEG(P3("F(L(N)*N)*L(F(N))"))
    want = parse_expr("Delta(D+1) + D*Delta(1)", "arctic")
    for d in range(7):
        for delta in ELLS:
            assert arc2_eval(got, d, delta) == arc2_eval(want, d, delta)
    assert p3_DEG(ex.N) == ac.Const(1)
    assert p3_DEG(P3("F(1)")) == ac.Delta(ac.Const(0))


def test_depthF():
    assert p3_depthF(P3("F(F(N))")) == 2
    assert p3_depthF(P3("L(N)")) == 0
    assert p3_depthF(P3("F(L(F(N)))")) == 2


def test_double_degree():
    # Delta(Delta(1)) has limit L(L(1)) whose degree D*(D*0) is 0
    r = p3_double_degree(P3("F(F(N))"))
    assert r.poly == Poly1()
    # no F and no L: the limit is the zero polynomial, read as the constant 1
    assert p3_double_degree(P3("N*N")).poly == Poly1()
    r = p3_double_degree(P3("L(N)+F(N)"))
    assert isinstance(r, Incomparable)
    assert r.describe() == "incomparable operands in max(D, Delta(1)): D vs Delta(1)"


def test_distinguish_examples():
    found = p3_distinguish_random([P3("F(N)"), P3("L(N)")])
    assert isinstance(found, Assignment3)
    a, b = (p3_eval(P, found.n, found.ell, found.phi) for P in (P3("F(N)"), P3("L(N)")))
    assert a != b and found.values == (a, b)
    found = p3_distinguish_random([P3("F(N)"), P3("F(N)+1")])
    assert found.values[1] == found.values[0] + 1
    with pytest.raises(DuplicateInputs):
        p3_distinguish_random([ex.N, ex.N])


def test_distinguish_is_deterministic():
    Ps = [P3("F(N)*L(N)"), P3("L(F(N))"), P3("F(L(N))")]
    a, b = p3_distinguish_random(Ps, seed=4), p3_distinguish_random(Ps, seed=4)
    assert (a.n, a.ell.describe(), a.phi, a.values) == (b.n, b.ell.describe(), b.phi, b.values)


def test_eval_monotone_in_all_arguments():
    rng = random.Random(15)
    small, big = MonotoneFn([(0, 1)], MonotoneFn.identity().tail), double
    for _ in range(200):
        P = random_poly(rng, 10, 3, third=True)
        n = rng.randint(0, 3)
        lo = p3_eval(P, n, small, op("L(N)"))
        hi = p3_eval(P, n + 1, big, op("L(N)*L(N)+N"))
        assert lo <= hi
