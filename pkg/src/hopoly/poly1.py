"""Sparse multivariate polynomials over the naturals.

A polynomial is a mapping from monomials to positive coefficients.  A
monomial is a sorted tuple of ``(variable, exponent)`` pairs with every
exponent >= 1; the empty tuple is the constant monomial 1.  The mapping is
the canonical form, so two polynomials are syntactically equivalent exactly
when their mappings are equal.

Variables are plain integers.  Pretty names are supplied by callers at
print time (see :meth:`Poly1.to_text`).

  3*X0^2*X1 + 5  ->  {((0, 2), (1, 1)): 3, (): 5}
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Tuple

from .errors import MissingVariable, NotUnivariate

Monomial = Tuple[Tuple[int, int], ...]

ONE_MONOMIAL: Monomial = ()

LT, EQ, GT = -1, 0, 1


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_sort_key(m: Monomial):
    # total degree descending, then larger exponents on smaller ids first
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


class Poly1:
    """Immutable polynomial in monomial normal form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, int]] = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c < 0:
                    raise ValueError("coefficients must be natural numbers")
                if c:
                    key = tuple(sorted(mono))
                    clean[key] = clean.get(key, 0) + c
        self._terms: Dict[Monomial, int] = clean
        self._hash = hash(frozenset(clean.items()))

    # -- constructors --------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "Poly1":
        return cls({ONE_MONOMIAL: c}) if c else cls()

    @classmethod
    def var(cls, v: int, exponent: int = 1) -> "Poly1":
        if exponent == 0:
            return cls.const(1)
        return cls({((v, exponent),): 1})

    @classmethod
    def univariate(cls, coeffs: Iterable[int], v: int = 0) -> "Poly1":
        """Build ``sum(c_i * X_v^i)`` from a low-to-high coefficient list."""
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[((v, i),) if i else ONE_MONOMIAL] = c
        return cls(terms)

    # -- container protocol --------------------------------------------

    @property
    def terms(self) -> Dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Poly1.const(other)
        if not isinstance(other, Poly1):
            return NotImplemented
        return self._hash == other._hash and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poly1({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Poly1 | int") -> "Poly1":
        if isinstance(other, int):
            other = Poly1.const(other)
        if not other:
            return self
        if not self:
            return other
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, 0) + c
        return _raw(terms)

    __radd__ = __add__

    def __mul__(self, other: "Poly1 | int") -> "Poly1":
        if isinstance(other, int):
            other = Poly1.const(other)
        if not self or not other:
            return Poly1()
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                terms[m] = terms.get(m, 0) + c1 * c2
        return _raw(terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly1":
        result = Poly1.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries -------------------------------------------------------

    def variables(self) -> set:
        return {v for mono in self._terms for v, _ in mono}

    def occurs(self, v: int) -> bool:
        return any(u == v for mono in self._terms for u, _ in mono)

    def total_degree(self) -> Optional[int]:
        """Maximum monomial degree; ``None`` for the zero polynomial."""
        if not self._terms:
            return None
        return max(mono_degree(m) for m in self._terms)

    def degree_in(self, v: int) -> int:
        return max((e for mono in self._terms for u, e in mono if u == v), default=0)

    def constant_term(self) -> int:
        return self._terms.get(ONE_MONOMIAL, 0)

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def coeffs(self, v: int) -> list:
        """Low-to-high coefficient list of a polynomial univariate in ``v``."""
        _check_univariate(self, v)
        out = [0] * (self.degree_in(v) + 1)
        for mono, c in self._terms.items():
            out[mono[0][1] if mono else 0] = c
        return out

    def evaluate(self, point: Mapping[int, int]) -> int:
        total = 0
        for mono, c in self._terms.items():
            term = c
            for v, e in mono:
                try:
                    x = point[v]
                except KeyError:
                    raise MissingVariable(v) from None
                term *= x ** e
            total += term
        return total

    def __call__(self, *args, **kwargs) -> int:
        return self.evaluate(*args, **kwargs)

    def substitute(self, values: Mapping[int, int]) -> "Poly1":
        """Plug numbers in for some variables and keep the rest symbolic."""
        terms: Dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            rest = []
            for v, e in mono:
                if v in values:
                    c *= values[v] ** e
                else:
                    rest.append((v, e))
            if c:
                key = tuple(rest)
                terms[key] = terms.get(key, 0) + c
        return _raw(terms)

    def split(self, keep: set) -> Dict[Monomial, "Poly1"]:
        """Group by the monomial in variables outside ``keep``.

        Returns ``{outer_monomial: coefficient polynomial in keep}``.
        """
        groups: Dict[Monomial, Dict[Monomial, int]] = {}
        for mono, c in self._terms.items():
            inner = tuple((v, e) for v, e in mono if v in keep)
            outer = tuple((v, e) for v, e in mono if v not in keep)
            g = groups.setdefault(outer, {})
            g[inner] = g.get(inner, 0) + c
        return {k: _raw(g) for k, g in groups.items()}

    def rename(self, mapping: Mapping[int, int]) -> "Poly1":
        terms: Dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            m = ONE_MONOMIAL
            for v, e in mono:
                m = mono_mul(m, ((mapping.get(v, v), e),))
            terms[m] = terms.get(m, 0) + c
        return _raw(terms)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: mono_sort_key(kv[0]))

    def to_text(self, names: Optional[Callable[[int], str] | Mapping[int, str]] = None) -> str:
        """Canonical text, e.g. ``15*D^3 + 2*D + 4``."""
        if not self._terms:
            return "0"
        if names is None:
            name = lambda v: f"X{v}"  # noqa: E731
        elif callable(names):
            name = names
        else:
            name = lambda v: names.get(v, f"X{v}")  # noqa: E731
        parts = []
        for mono, c in self.sorted_terms():
            factors = [name(v) if e == 1 else f"{name(v)}^{e}" for v, e in mono]
            if c != 1 or not factors:
                factors.insert(0, str(c))
            parts.append("*".join(factors))
        return " + ".join(parts)


def _raw(terms: Dict[Monomial, int]) -> Poly1:
    # terms already canonical: sorted monomials, no zero coefficients
    p = Poly1.__new__(Poly1)
    p._terms = {m: c for m, c in terms.items() if c}
    p._hash = hash(frozenset(p._terms.items()))
    return p


def _check_univariate(p: Poly1, v: int) -> None:
    extra = p.variables() - {v}
    if extra:
        raise NotUnivariate(f"polynomial {p.to_text()} mentions variables {sorted(extra)}")


def p1_add(p: Poly1, q: Poly1) -> Poly1:
    return p + q


def p1_mul(p: Poly1, q: Poly1) -> Poly1:
    return p * q


def p1_eval(p: Poly1, point: Mapping[int, int]) -> int:
    return p.evaluate(point)


def p1_total_degree(p: Poly1) -> Optional[int]:
    return p.total_degree()


def p1_occurs(p: Poly1, v: int) -> bool:
    return p.occurs(v)


def p1_eventual_compare(p: Poly1, q: Poly1, v: int = 0) -> Tuple[int, int]:
    """Eventual order of two univariate polynomials.

    Returns ``(order, d0)`` with ``order`` in ``{LT, EQ, GT}`` such that the
    strict order holds for every ``d >= d0`` (``d0 = 0`` for ``EQ``).

    Coefficients are compared from the top degree down.  Say the first
    difference is ``g > 0`` at degree ``k``, and ``B`` sums the amounts by
    which the eventually-smaller polynomial exceeds the larger one below
    ``k``.  For ``d >= 1`` the gap is at least ``g*d^k - B*d^(k-1)``, positive
    once ``d > B/g``, so ``d0 = B//g + 1`` is certified.  It never exceeds
    one plus the coefficient sum of the smaller polynomial.
    """
    a, b = p.coeffs(v), q.coeffs(v)
    width = max(len(a), len(b))
    a += [0] * (width - len(a))
    b += [0] * (width - len(b))
    for k in range(width - 1, -1, -1):
        if a[k] != b[k]:
            order = GT if a[k] > b[k] else LT
            big, small = (a, b) if order == GT else (b, a)
            if k == 0:
                return order, 0
            excess = sum(max(0, s - g) for s, g in zip(small[:k], big[:k]))
            return order, excess // (big[k] - small[k]) + 1
    return EQ, 0
