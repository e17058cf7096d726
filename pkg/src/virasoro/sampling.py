"""Seeded random generators for the property batteries."""
from __future__ import annotations

import random
from fractions import Fraction

from .lie import C, LieElement
from .pbw import ASC, OrderSpec, UEAElement, normal_form


def random_rational(rng: random.Random, span: int = 5) -> Fraction:
    q = Fraction(0)
    while q == 0:
        q = Fraction(rng.randint(-span, span), rng.randint(1, 3))
    return q


def random_word(rng: random.Random, max_len: int = 6, lo: int = -4, hi: int = 4) -> tuple[int, ...]:
    return tuple(rng.randint(lo, hi) for _ in range(rng.randint(0, max_len)))


def random_lie(rng: random.Random, max_terms: int = 3, lo: int = -6, hi: int = 6) -> LieElement:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        g = C if rng.random() < 0.15 else rng.randint(lo, hi)
        terms[g] = random_rational(rng)
    return LieElement(terms)


def random_element(
    rng: random.Random,
    order: OrderSpec = ASC,
    max_terms: int = 3,
    max_len: int = 3,
    lo: int = -3,
    hi: int = 3,
) -> UEAElement:
    """Sum of up to ``max_terms`` random words (with occasional ``c``), normalized."""
    out = UEAElement({}, order)
    for _ in range(rng.randint(1, max_terms)):
        word = list(random_word(rng, max_len, lo, hi))
        if rng.random() < 0.2:
            word.insert(rng.randint(0, len(word)), C)
        out = out + random_rational(rng) * normal_form(word, order)
    return out
