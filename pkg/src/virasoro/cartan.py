"""Commutative polynomials in ``e(0)`` and ``c`` and their rational roots."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .errors import NotCartanError

__all__ = ["CartanPolynomial", "rational_roots"]


class CartanPolynomial:
    """Polynomial in the commuting pair ``e(0)``, ``c``.

    ``coefficients`` maps ``(power of e(0), power of c)`` to a rational.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (a, b), q in (coefficients or {}).items():
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in {(a, b)}")
            q = Fraction(q)
            if q:
                clean[(int(a), int(b))] = clean.get((int(a), int(b)), 0) + q
        self._coeffs = {k: v for k, v in clean.items() if v}

    @property
    def coefficients(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def involves_central(self) -> bool:
        return any(b for _, b in self._coeffs)

    def degree(self) -> int:
        return max((a for a, _ in self._coeffs), default=-1)

    def __eq__(self, other):
        if not isinstance(other, CartanPolynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __call__(self, h, chi=0) -> Fraction:
        return self.evaluate(h, chi)

    def evaluate(self, h, chi=0) -> Fraction:
        h, chi = Fraction(h), Fraction(chi)
        return sum((q * h**a * chi**b for (a, b), q in self._coeffs.items()), Fraction(0))

    def univariate(self) -> list[Fraction]:
        """Coefficient list in ``e(0)``, constant term first."""
        if self.involves_central():
            raise NotCartanError("polynomial involves c; expected e(0) only")
        out = [Fraction(0)] * (self.degree() + 1)
        for (a, _), q in self._coeffs.items():
            out[a] = q
        return out

    def shifted(self, s) -> "CartanPolynomial":
        """The polynomial ``p(e(0) + s, c)``."""
        s = Fraction(s)
        out: dict[tuple[int, int], Fraction] = {}
        for (a, b), q in self._coeffs.items():
            for k in range(a + 1):
                key = (k, b)
                out[key] = out.get(key, 0) + q * math.comb(a, k) * s ** (a - k)
        return CartanPolynomial(out)

    def __repr__(self):
        if not self._coeffs:
            return "CartanPolynomial(0)"
        return f"CartanPolynomial({dict(sorted(self._coeffs.items(), reverse=True))})"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: CartanPolynomial | list) -> set[Fraction]:
    """All rational roots of a univariate polynomial in ``e(0)``.

    Accepts a :class:`CartanPolynomial` without ``c`` or a coefficient list
    (constant term first). Candidates are ``p/q`` with ``p`` dividing the
    constant term and ``q`` the leading coefficient, after clearing
    denominators and factoring out powers of ``e(0)``.
    """
    coeffs = p.univariate() if isinstance(p, CartanPolynomial) else [Fraction(q) for q in p]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ValueError("the zero polynomial has no finite root set")
    roots: set[Fraction] = set()
    low = 0
    while coeffs[low] == 0:
        low += 1
    if low:
        roots.add(Fraction(0))
    coeffs = coeffs[low:]
    if len(coeffs) == 1:
        return roots
    lcm = 1
    for q in coeffs:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in coeffs]

    def value(x):
        acc = Fraction(0)
        for c in reversed(ints):
            acc = acc * x + c
        return acc

    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and value(cand) == 0:
                    roots.add(cand)
    return roots
