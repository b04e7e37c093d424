"""Concrete nondecreasing functions N -> N used as values of ``Lambda``.

A :class:`MonotoneFn` is a step table plus a tail rule past the last
breakpoint.  Below the first breakpoint it is constant (the first value), so
every instance is total.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence, Tuple, Union

from .errors import DomainError
from .poly1 import Poly1


@dataclass(frozen=True)
class Hold:
    def extend(self, last_x, last_y, m):
        return last_y

    def describe(self):
        return "hold"


@dataclass(frozen=True)
class AffineSlope:
    slope: int

    def extend(self, last_x, last_y, m):
        return last_y + self.slope * (m - last_x)

    def describe(self):
        return f"slope:{self.slope}"


@dataclass(frozen=True)
class PolyTail:
    poly: Poly1  # univariate in variable 0

    def extend(self, last_x, last_y, m):
        return self.poly.evaluate({0: m})

    def describe(self):
        from .syntax import poly1_text

        return f"poly:{poly1_text(self.poly, 'm')}"


Tail = Union[Hold, AffineSlope, PolyTail]


class MonotoneFn:
    """Nondecreasing total function given by breakpoints and a tail.

    >>> f = MonotoneFn([(2, 5), (4, 6)], AffineSlope(1))
    >>> [f(m) for m in range(7)]
    [5, 5, 5, 5, 6, 7, 8]
    """

    __slots__ = ("xs", "ys", "tail")

    def __init__(self, breakpoints: Sequence[Tuple[int, int]], tail: Tail = Hold()):
        if not breakpoints:
            raise DomainError("a monotone table needs at least one breakpoint")
        xs = [int(x) for x, _ in breakpoints]
        ys = [int(y) for _, y in breakpoints]
        if min(xs) < 0 or min(ys) < 0:
            raise DomainError("breakpoints must be natural numbers")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise DomainError("breakpoint arguments must be strictly increasing")
        if any(b < a for a, b in zip(ys, ys[1:])):
            raise DomainError("breakpoint values must be nondecreasing")
        if isinstance(tail, AffineSlope) and tail.slope < 0:
            raise DomainError("tail slope must be nonnegative")
        if isinstance(tail, PolyTail):
            if tail.poly.variables() - {0}:
                raise DomainError("tail polynomial must be univariate")
            if tail.poly.evaluate({0: xs[-1]}) < ys[-1]:
                raise DomainError("tail polynomial starts below the last breakpoint value")
        self.xs, self.ys, self.tail = xs, ys, tail

    @classmethod
    def from_poly(cls, p: Poly1) -> "MonotoneFn":
        """``m -> p(m)``; monotone because the coefficients are natural."""
        return cls([(0, p.evaluate({0: 0}))], PolyTail(p))

    @classmethod
    def identity(cls) -> "MonotoneFn":
        return cls([(0, 0)], AffineSlope(1))

    @property
    def breakpoints(self):
        return list(zip(self.xs, self.ys))

    def __call__(self, m: int) -> int:
        if m > self.xs[-1]:
            return self.tail.extend(self.xs[-1], self.ys[-1], m)
        i = bisect.bisect_right(self.xs, m) - 1
        return self.ys[max(i, 0)]

    def describe(self) -> str:
        table = ",".join(f"{x}:{y}" for x, y in self.breakpoints)
        return f"table:{table};tail:{self.tail.describe()}"

    def __repr__(self):
        return f"MonotoneFn({self.describe()})"
