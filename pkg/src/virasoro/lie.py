"""The Virasoro Lie algebra as data.

Basis: ``e(i)`` for every integer ``i`` plus a central element ``c``, with

    [e(i), e(j)] = (j - i) e(i + j) + delta(i, -j) (i**3 - i) / 12 c.

Generators are represented by plain ``int`` indices and the singleton
:data:`C`. Every coefficient is a :class:`fractions.Fraction`.
"""
from __future__ import annotations

import contextlib
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Union

__all__ = [
    "C",
    "Generator",
    "LieElement",
    "e",
    "central",
    "structure_constants",
    "bracket_gen",
    "bracket",
    "jacobi_defect",
    "involution",
    "perturbed_structure_constant",
]


class _Central:
    __slots__ = ()

    def __repr__(self):
        return "c"

    def __reduce__(self):
        return "C"


C = _Central()
Generator = Union[int, _Central]

# (i, j) -> (e-coefficient delta, c-coefficient delta); negative-control hook
_PERTURBATIONS: dict[tuple[int, int], tuple[Fraction, Fraction]] = {}
_CHANGE_HOOKS: list[Callable[[], None]] = []
_REVISION = [0]


def on_structure_change(hook: Callable[[], None]) -> Callable[[], None]:
    """Register ``hook`` to run whenever the structure constants are perturbed."""
    _CHANGE_HOOKS.append(hook)
    return hook


def revision() -> int:
    """Counter bumped on every perturbation; lets callers key their caches."""
    return _REVISION[0]


def is_perturbed() -> bool:
    return bool(_PERTURBATIONS)


def _notify():
    _REVISION[0] += 1
    for hook in _CHANGE_HOOKS:
        hook()


def structure_constants(i: int, j: int) -> tuple[Fraction, Fraction]:
    """Return ``(a, z)`` with ``[e(i), e(j)] = a e(i+j) + z c``."""
    a = Fraction(j - i)
    z = Fraction(i**3 - i, 12) if i == -j else Fraction(0)
    if _PERTURBATIONS:
        da, dz = _PERTURBATIONS.get((i, j), (0, 0))
        a += da
        z += dz
    return a, z


@contextlib.contextmanager
def perturbed_structure_constant(i: int, j: int, de=1, dc=0) -> Iterator[None]:
    """Temporarily shift the constants of ``[e(i), e(j)]`` by ``(de, dc)``.

    The shift is applied antisymmetrically, so ``[e(j), e(i)]`` moves by
    ``(-de, -dc)``. Exists only to run negative controls against the
    verification suite.
    """
    if i == j:
        raise ValueError("cannot perturb [e(i), e(i)] antisymmetrically")
    de, dc = Fraction(de), Fraction(dc)
    saved = dict(_PERTURBATIONS)
    _PERTURBATIONS[(i, j)] = (de, dc)
    _PERTURBATIONS[(j, i)] = (-de, -dc)
    _notify()
    try:
        yield
    finally:
        _PERTURBATIONS.clear()
        _PERTURBATIONS.update(saved)
        _notify()


def _gen_key(g):
    return (1, 0) if g is C else (0, g)


class LieElement:
    """A finite rational combination of generators.

    Zero coefficients are never stored, so ``==`` compares mathematically.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Generator, object] | None = None):
        clean = {}
        for g, q in (terms or {}).items():
            if not (g is C or isinstance(g, int)):
                raise TypeError(f"not a generator: {g!r}")
            q = Fraction(q)
            if q:
                clean[g] = q
        self._terms = clean
        self._hash = None

    @property
    def terms(self) -> dict[Generator, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: _gen_key(kv[0]))

    def coeff(self, g: Generator) -> Fraction:
        return self._terms.get(g, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LieElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        out = dict(self._terms)
        for g, q in other._terms.items():
            out[g] = out.get(g, 0) + q
        return LieElement(out)

    def __neg__(self):
        return LieElement({g: -q for g, q in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return LieElement({g: q * scalar for g, q in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for g, q in self.items():
            name = "c" if g is C else f"e({g})"
            parts.append(f"{q}*{name}" if q != 1 else name)
        return " + ".join(parts)


def e(i: int) -> LieElement:
    return LieElement({i: 1})


def central() -> LieElement:
    return LieElement({C: 1})


def bracket_gen(i: int, j: int) -> LieElement:
    a, z = structure_constants(i, j)
    return LieElement({i + j: a, C: z})


def bracket(x: LieElement, y: LieElement) -> LieElement:
    out: dict[Generator, Fraction] = {}
    for g, p in x._terms.items():
        if g is C:
            continue
        for h, q in y._terms.items():
            if h is C:
                continue
            a, z = structure_constants(g, h)
            pq = p * q
            if a:
                out[g + h] = out.get(g + h, 0) + pq * a
            if z:
                out[C] = out.get(C, 0) + pq * z
    return LieElement(out)


def jacobi_defect(x: LieElement, y: LieElement, z: LieElement) -> LieElement:
    return (
        bracket(x, bracket(y, z))
        + bracket(y, bracket(z, x))
        + bracket(z, bracket(x, y))
    )


def involution(x: LieElement) -> LieElement:
    """The automorphism ``e(i) -> -e(-i)``, ``c -> -c``."""
    return LieElement({(g if g is C else -g): -q for g, q in x._terms.items()})
