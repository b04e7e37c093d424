import random

import pytest

from hopoly import arctic as ac
from hopoly import expr as ex
from hopoly.errors import OrderMismatch, ParseError
from hopoly.gen import random_arctic, random_arctic2, random_poly
from hopoly.poly1 import Poly1
from hopoly.syntax import infer_order, parse, parse_expr, parse_poly1, poly1_text, to_text, tokenize


def test_sugar_expansion():
    e = parse_expr("L(N^2)+N^9", "p2")
    assert e.left == ex.Lam(ex.Mul(ex.N, ex.N))
    assert e.right == ex.power(ex.N, 9)
    assert parse_expr("3", "p2") == ex.numeral(3)


def test_golden_arctic_text_parses():
    t = parse_expr("max(D*3*D*5*D + max(2*D,9) + 4, 999 + D*max(5, 8*D+D), 450*D)", "arctic")
    assert isinstance(t, ac.Max)
    assert ac.arc_eval(t, 6) == 15 * 216 + 12 + 4


def test_round_trip_example():
    text = "F(L(N)*N)*L(F(N))"
    src = parse(text)
    assert src.order == "p3"
    assert parse_expr(to_text(src.ast), "p3") == src.ast


def test_auto_order():
    assert parse("N+L(1)").order == "p2"
    assert parse("F(N)").order == "p3"
    assert parse("max(D, 2)").order == "arctic"
    assert parse("Delta(D)").order == "arctic"
    assert infer_order(tokenize("L(N)")) == "p2"


def test_unicode_aliases():
    assert parse_expr("Λ(N)", "p2") == parse_expr("L(N)", "p2")
    assert parse_expr("Δ(D)", "arctic") == parse_expr("Delta(D)", "arctic")
    assert parse_expr("ℱ(N)", "p3") == parse_expr("F(N)", "p3")
    assert "Λ" not in to_text(parse_expr("Λ(N)", "p2"))


@pytest.mark.parametrize(
    "text, order, exc",
    [
        ("F(N)", "p2", OrderMismatch),
        ("max(N, 1)", "p2", OrderMismatch),
        ("D + 1", "p3", OrderMismatch),
        ("0", "p2", ParseError),
        ("N +", "p2", ParseError),
        ("L(N", "p2", ParseError),
        ("N $ 1", "auto", ParseError),
    ],
)
def test_parse_errors(text, order, exc):
    with pytest.raises(exc):
        parse(text, order)


def test_parse_error_position_and_expected():
    with pytest.raises(ParseError) as info:
        parse("L(N", "p2")
    assert info.value.position == 3
    assert ")" in info.value.expected


def test_zero_allowed_in_arctic():
    assert parse_expr("max(0, D)", "arctic") == ac.Max(ac.Const(0), ac.DVAR)


def test_poly1_text_round_trip():
    p = parse_poly1("2*m^2 + m + 3")
    assert p == Poly1.univariate([3, 1, 2])
    assert parse_poly1(poly1_text(p)) == p


def test_arctic_style_printing():
    assert to_text(parse_expr("L(N)*N", "p2"), style="arctic") == "Delta(D) * D"


@pytest.mark.parametrize("order", ["p2", "p3", "arctic"])
def test_print_parse_idempotent(order):
    rng = random.Random({"p2": 1, "p3": 2, "arctic": 3}[order])
    for _ in range(1000):
        if order == "arctic":
            ast = random_arctic(rng, 15, 9) if rng.random() < 0.5 else random_arctic2(rng)
        else:
            ast = random_poly(rng, 14, 4, third=order == "p3")
        text = to_text(ast)
        back = parse_expr(text, order)
        assert to_text(back) == text
        if order != "arctic":
            assert back == ast
        else:
            for d in range(4):
                for delta in (lambda m: m + 1, lambda m: 2 * m):
                    assert ac.arc2_eval(back, d, delta) == ac.arc2_eval(ast, d, delta)
