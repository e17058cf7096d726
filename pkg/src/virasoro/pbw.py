"""The universal enveloping algebra U(Vir) in PBW normal form.

An element is a rational combination of ordered monomials
``e(i1)^a1 ... e(ik)^ak c^m`` whose generator indices strictly increase in
the rank of an :class:`OrderSpec`. Normal forms are computed by rewriting
the leftmost out-of-order adjacent pair ``e(a) e(b)`` into
``e(b) e(a) + [e(a), e(b)]``; ``c`` is central and only ever tracked as an
exponent.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import groupby
from typing import Callable, Iterable, Mapping, Sequence

from . import lie
from .cartan import CartanPolynomial, rational_roots
from .errors import NotCartanError, OrderError
from .lie import C, LieElement

__all__ = [
    "OrderSpec",
    "clear_cache",
    "ASC",
    "DESC",
    "HW",
    "ANN",
    "PBWMonomial",
    "UEAElement",
    "gen",
    "one",
    "scalar",
    "central",
    "normal_form",
    "multiply",
    "change_order",
    "reduce_mod_left_ideal",
    "cartan_polynomial",
    "eval_cartan",
    "eval_cartan_tail",
    "degree_components",
    "rational_roots",
    "is_supported_on",
    "involution_uea",
]


@dataclass(frozen=True)
class OrderSpec:
    """A total order on the indexed generators.

    Unpromoted generators are ranked by index (``base`` ascending or
    descending); ``promoted`` generators outrank all of them, the last entry
    being maximal (rightmost in normal form).
    """

    base: str = "asc"
    promoted: tuple[int, ...] = ()
    label: str = "asc"
    _pos: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.base not in ("asc", "desc"):
            raise ValueError(f"unknown base order {self.base!r}")
        if len(set(self.promoted)) != len(self.promoted):
            raise ValueError("promoted generators must be distinct")
        object.__setattr__(self, "promoted", tuple(self.promoted))
        object.__setattr__(self, "_pos", {g: k for k, g in enumerate(self.promoted)})

    def rank(self, i: int) -> tuple[int, int]:
        pos = self._pos.get(i)
        if pos is not None:
            return (1, pos)
        return (0, i if self.base == "asc" else -i)

    def is_normal(self, letters: Sequence[int]) -> bool:
        ranks = [self.rank(i) for i in letters]
        return all(a <= b for a, b in zip(ranks, ranks[1:]))

    def outranks_base(self, i: int) -> bool:
        """True when ``e(i)`` is ranked above every unpromoted generator."""
        return i in self._pos

    def __str__(self):
        return self.label

    @classmethod
    def from_string(cls, text: str) -> "OrderSpec":
        text = text.strip().lower()
        if text == "asc":
            return ASC
        if text == "desc":
            return DESC
        if text == "hw":
            return HW
        if text.startswith("ann:"):
            try:
                g = int(text[4:])
            except ValueError:
                raise ValueError(f"bad order {text!r}: ann:<g> needs an integer g") from None
            return ANN(g)
        raise ValueError(f"unknown order {text!r}; expected asc, desc, hw or ann:<g>")


ASC = OrderSpec("asc", (), "asc")
DESC = OrderSpec("desc", (), "desc")
# Verma basis order: e(-l1)...e(-lk) with l1 >= ... >= lk, then e(0), then
# positive generators ascending. As a total order this agrees with ASC.
HW = OrderSpec("asc", (), "hw")


def ANN(g: int) -> OrderSpec:
    """Ascending order with ``e(0)`` promoted and ``e(g)`` maximal."""
    if g == 0:
        return OrderSpec("asc", (0,), "ann:0")
    return OrderSpec("asc", (0, g), f"ann:{g}")


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """Run-length encoded word ``((index, exponent), ...)`` times ``c**central``."""

    word: tuple[tuple[int, int], ...] = ()
    central: int = 0

    def __post_init__(self):
        for (i, k), nxt in zip(self.word, self.word[1:] + ((None, None),)):
            if k <= 0:
                raise ValueError(f"exponent of e({i}) must be positive")
            if nxt[0] == i:
                raise ValueError("adjacent word entries must have distinct indices")
        if self.central < 0:
            raise ValueError("central exponent must be nonnegative")

    @classmethod
    def from_letters(cls, letters: Iterable[int], central: int = 0) -> "PBWMonomial":
        word = tuple((i, len(list(run))) for i, run in groupby(letters))
        return cls(word, central)

    def letters(self) -> tuple[int, ...]:
        return tuple(i for i, k in self.word for _ in range(k))

    def indices(self) -> set[int]:
        return {i for i, _ in self.word}

    @property
    def degree(self) -> int:
        return sum(i * k for i, k in self.word)

    @property
    def length(self) -> int:
        return sum(k for _, k in self.word) + self.central

    def display_key(self):
        """Fixed sort key for printing: degree, longer first, then the word."""
        return (self.degree, -self.length, self.letters(), self.central)


def _accumulate(acc, items, scale, cshift):
    for (letters, cexp), q in items:
        key = (letters, cexp + cshift)
        acc[key] = acc.get(key, 0) + q * scale


def _first_descent(letters, rank):
    for p in range(len(letters) - 1):
        if rank(letters[p]) > rank(letters[p + 1]):
            return p
    return None


@functools.lru_cache(maxsize=None)
def _nf_leftmost(letters: tuple[int, ...], order: OrderSpec):
    p = _first_descent(letters, order.rank)
    if p is None:
        return (((letters, 0), Fraction(1)),)
    a, b = letters[p], letters[p + 1]
    head, tail = letters[:p], letters[p + 2 :]
    acc: dict = {}
    _accumulate(acc, _nf_leftmost(head + (b, a) + tail, order), 1, 0)
    coef, zc = lie.structure_constants(a, b)
    if coef:
        _accumulate(acc, _nf_leftmost(head + (a + b,) + tail, order), coef, 0)
    if zc:
        _accumulate(acc, _nf_leftmost(head + tail, order), zc, 1)
    return tuple((k, q) for k, q in acc.items() if q)


lie.on_structure_change(_nf_leftmost.cache_clear)


def clear_cache() -> None:
    """Drop memoized rewrites (for cold-start timing)."""
    _nf_leftmost.cache_clear()


def _nf_random(letters, order, rng):
    rank = order.rank
    spots = [p for p in range(len(letters) - 1) if rank(letters[p]) > rank(letters[p + 1])]
    if not spots:
        return (((letters, 0), Fraction(1)),)
    p = rng.choice(spots)
    a, b = letters[p], letters[p + 1]
    head, tail = letters[:p], letters[p + 2 :]
    acc: dict = {}
    _accumulate(acc, _nf_random(head + (b, a) + tail, order, rng), 1, 0)
    coef, zc = lie.structure_constants(a, b)
    if coef:
        _accumulate(acc, _nf_random(head + (a + b,) + tail, order, rng), coef, 0)
    if zc:
        _accumulate(acc, _nf_random(head + tail, order, rng), zc, 1)
    return tuple((k, q) for k, q in acc.items() if q)


def _nf_terms(letters, cexp, order, rng=None) -> dict[PBWMonomial, Fraction]:
    items = _nf_leftmost(tuple(letters), order) if rng is None else _nf_random(tuple(letters), order, rng)
    return {PBWMonomial.from_letters(w, cexp + z): q for (w, z), q in items}


class UEAElement:
    """A finite rational combination of PBW monomials under one order."""

    __slots__ = ("_terms", "order")

    def __init__(self, terms: Mapping[PBWMonomial, object] | None = None, order: OrderSpec = ASC):
        clean: dict[PBWMonomial, Fraction] = {}
        for m, q in (terms or {}).items():
            if not order.is_normal(m.letters()):
                raise OrderError(f"monomial {m} is not normal under {order}")
            q = Fraction(q)
            if q:
                clean[m] = q
        self._terms = clean
        self.order = order

    @classmethod
    def _trusted(cls, terms, order):
        obj = cls.__new__(cls)
        obj._terms = {m: q for m, q in terms.items() if q}
        obj.order = order
        return obj

    @property
    def terms(self) -> dict[PBWMonomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0].display_key())

    def coeff(self, m: PBWMonomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self == scalar(other, self.order)
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.order == other.order and self._terms == other._terms

    def __hash__(self):
        return hash((self.order, frozenset(self._terms.items())))

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar(other, self.order)
        if isinstance(other, UEAElement):
            return other if other.order == self.order else change_order(other, self.order)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for m, q in other._terms.items():
            out[m] = out.get(m, 0) + q
        return UEAElement._trusted(out, self.order)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._trusted({m: -q for m, q in self._terms.items()}, self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UEAElement._trusted({m: q * other for m, q in self._terms.items()}, self.order)
        if isinstance(other, UEAElement):
            return multiply(self, other, self.order)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        from .dsl import format_element

        return f"UEAElement({format_element(self)!r}, order={self.order})"

    def __str__(self):
        from .dsl import format_element

        return format_element(self)


def one(order: OrderSpec = ASC) -> UEAElement:
    return UEAElement._trusted({PBWMonomial(): Fraction(1)}, order)


def scalar(q, order: OrderSpec = ASC) -> UEAElement:
    return UEAElement._trusted({PBWMonomial(): Fraction(q)}, order)


def gen(i: int, order: OrderSpec = ASC) -> UEAElement:
    return UEAElement._trusted({PBWMonomial(((i, 1),)): Fraction(1)}, order)


def central(order: OrderSpec = ASC) -> UEAElement:
    return UEAElement._trusted({PBWMonomial((), 1): Fraction(1)}, order)


def normal_form(word, order: OrderSpec = ASC, rng: random.Random | None = None) -> UEAElement:
    """PBW expansion of a product of factors under ``order``.

    ``word`` is a sequence whose items are generator indices, :data:`C`, or
    :class:`LieElement` factors (expanded multilinearly). With ``rng`` the
    out-of-order pair to rewrite is picked at random instead of leftmost;
    the result must not depend on that choice.
    """
    raw: dict[tuple[tuple[int, ...], int], Fraction] = {((), 0): Fraction(1)}
    for f in word:
        if f is C:
            raw = {(w, z + 1): q for (w, z), q in raw.items()}
        elif isinstance(f, int):
            raw = {(w + (f,), z): q for (w, z), q in raw.items()}
        elif isinstance(f, LieElement):
            nxt: dict = {}
            for g, p in f.terms.items():
                for (w, z), q in raw.items():
                    key = (w, z + 1) if g is C else (w + (g,), z)
                    nxt[key] = nxt.get(key, 0) + p * q
            raw = nxt
        else:
            raise TypeError(f"cannot use {f!r} as a factor")
    out: dict[PBWMonomial, Fraction] = {}
    for (w, z), q in raw.items():
        if not q:
            continue
        for m, r in _nf_terms(w, z, order, rng).items():
            out[m] = out.get(m, 0) + q * r
    return UEAElement._trusted(out, order)


def multiply(u: UEAElement, v: UEAElement, order: OrderSpec | None = None) -> UEAElement:
    order = order or u.order
    out: dict[PBWMonomial, Fraction] = {}
    for m, p in u._terms.items():
        lm = m.letters()
        for n, q in v._terms.items():
            for k, r in _nf_terms(lm + n.letters(), m.central + n.central, order).items():
                out[k] = out.get(k, 0) + p * q * r
    return UEAElement._trusted(out, order)


def change_order(u: UEAElement, target: OrderSpec) -> UEAElement:
    if u.order == target:
        return u
    out: dict[PBWMonomial, Fraction] = {}
    for m, p in u._terms.items():
        for k, r in _nf_terms(m.letters(), m.central, target).items():
            out[k] = out.get(k, 0) + p * r
    return UEAElement._trusted(out, target)


def reduce_mod_left_ideal(u: UEAElement, g: int) -> UEAElement:
    """Canonical representative of ``u`` modulo the left ideal ``U e(g)``.

    Under ``ANN(g)`` every monomial containing ``e(g)`` ends in it, so
    dropping those monomials removes exactly an element of the ideal.
    """
    if g == 0:
        raise ValueError("reduction modulo U e(0) is not supported; g must be nonzero")
    w = change_order(u, ANN(g))
    return UEAElement._trusted({m: q for m, q in w._terms.items() if g not in m.indices()}, w.order)


def cartan_polynomial(u: UEAElement) -> CartanPolynomial:
    bad = [m for m in u._terms if m.indices() - {0}]
    if bad:
        from .dsl import format_monomial

        listed = ", ".join(format_monomial(m) for m in sorted(bad, key=PBWMonomial.display_key))
        raise NotCartanError(f"not a Cartan element; offending monomials: {listed}")
    return CartanPolynomial({(dict(m.word).get(0, 0), m.central): q for m, q in u._terms.items()})


def eval_cartan(p: CartanPolynomial, h, chi=0) -> Fraction:
    return p.evaluate(h, chi)


def eval_cartan_tail(u: UEAElement, h, chi=0) -> UEAElement:
    """Replace trailing ``e(0)**a c**b`` factors by ``h**a chi**b``.

    Only meaningful when ``e(0)`` and ``c`` act on a common eigenvector to
    the right, i.e. ``u`` is normalized under an ``ann:<g>`` order or ``hw``.
    Any ``e(0)`` that is not the last factor of its monomial is rejected.
    """
    if not (u.order.outranks_base(0) or u.order.label == "hw"):
        raise OrderError(f"eval_cartan_tail needs an ann:<g> or hw order, got {u.order}")
    h, chi = Fraction(h), Fraction(chi)
    out: dict[PBWMonomial, Fraction] = {}
    for m, q in u._terms.items():
        word = m.word
        factor = chi**m.central
        if word and word[-1][0] == 0:
            factor *= h ** word[-1][1]
            word = word[:-1]
        if any(i == 0 for i, _ in word):
            raise OrderError(f"e(0) is not trailing in a monomial of degree {m.degree}")
        key = PBWMonomial(word, 0)
        out[key] = out.get(key, 0) + q * factor
    return UEAElement._trusted(out, u.order)


def degree_components(u: UEAElement) -> dict[int, UEAElement]:
    parts: dict[int, dict] = {}
    for m, q in u._terms.items():
        parts.setdefault(m.degree, {})[m] = q
    return {d: UEAElement._trusted(t, u.order) for d, t in sorted(parts.items())}


def is_supported_on(u: UEAElement, predicate: Callable[[int], bool], central_ok: bool = False) -> bool:
    """True iff every generator index in ``u`` satisfies ``predicate``.

    ``c`` is allowed only when ``central_ok`` is set.
    """
    for m in u._terms:
        if m.central and not central_ok:
            return False
        if not all(predicate(i) for i in m.indices()):
            return False
    return True


def involution_uea(u: UEAElement) -> UEAElement:
    """Extend ``e(i) -> -e(-i)``, ``c -> -c`` to an automorphism of U(Vir)."""
    out: dict[PBWMonomial, Fraction] = {}
    for m, q in u._terms.items():
        letters = tuple(-i for i in m.letters())
        sign = -1 if (len(letters) + m.central) % 2 else 1
        for k, r in _nf_terms(letters, m.central, u.order).items():
            out[k] = out.get(k, 0) + sign * q * r
    return UEAElement._trusted(out, u.order)
