import pytest

from hopoly.errors import DomainError
from hopoly.monotone import AffineSlope, Hold, MonotoneFn, PolyTail
from hopoly.poly1 import Poly1


def test_table_with_constant_head_and_hold():
    f = MonotoneFn([(2, 5), (4, 6)])
    assert [f(m) for m in range(7)] == [5, 5, 5, 5, 6, 6, 6]


def test_affine_tail():
    f = MonotoneFn([(1, 3)], AffineSlope(2))
    assert f(1) == 3
    assert f(10) == 21


def test_poly_tail():
    f = MonotoneFn.from_poly(Poly1.univariate([3, 0, 1]))
    assert [f(m) for m in range(4)] == [3, 4, 7, 12]


@pytest.mark.parametrize(
    "points, tail",
    [
        ([(1, 5), (2, 3)], Hold()),
        ([(2, 1), (1, 2)], Hold()),
        ([(0, 1)], AffineSlope(-1)),
        ([(5, 100)], PolyTail(Poly1.var(0))),
        ([], Hold()),
    ],
)
def test_rejects_non_monotone(points, tail):
    with pytest.raises(DomainError):
        MonotoneFn(points, tail)


def test_describe():
    f = MonotoneFn([(2, 5), (4, 16)], AffineSlope(1))
    assert f.describe() == "table:2:5,4:16;tail:slope:1"
