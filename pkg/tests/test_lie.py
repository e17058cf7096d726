import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from virasoro import lie
from virasoro.lie import C, LieElement, bracket, bracket_gen, central, e, involution, jacobi_defect


def brute_bracket(i, j):
    # written out independently of structure_constants
    out = {}
    if j - i:
        out[i + j] = Fraction(j - i)
    if i == -j and i ** 3 - i:
        out[C] = Fraction(i ** 3 - i, 12)
    return out


indices = st.integers(-12, 12)
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
elements = st.dictionaries(st.one_of(indices, st.just(C)), coeffs, max_size=4).map(LieElement)


@pytest.mark.parametrize(
    "i, j, expected",
    [
        (1, -1, {0: -2}),
        (2, -2, {0: -4, C: Fraction(1, 2)}),
        (-2, 2, {0: 4, C: Fraction(-1, 2)}),
        (3, -3, {0: -6, C: 2}),
        (0, 5, {5: 5}),
        (4, 4, {}),
        (1, 5, {6: 4}),
    ],
)
def test_bracket_gen_values(i, j, expected):
    assert bracket_gen(i, j) == LieElement(expected)


def test_bracket_gen_matches_formula_on_grid():
    for i, j in itertools.product(range(-9, 10), repeat=2):
        assert bracket_gen(i, j) == LieElement(brute_bracket(i, j)), (i, j)


def test_central_is_central():
    for i in range(-5, 6):
        assert bracket(central(), e(i)).is_zero()
        assert bracket(e(i), central()).is_zero()


def test_zero_pruning_and_repr():
    x = e(3) * 3 - e(3) * 3
    assert x.is_zero() and not x
    assert LieElement({5: 0}) == LieElement()
    assert repr(e(5) * 3) == "3*e(5)"


def test_jacobi_on_basis_triples():
    gens = range(-4, 5)
    for a, b, c in itertools.product(gens, repeat=3):
        assert jacobi_defect(e(a), e(b), e(c)).is_zero()


@given(elements, elements)
def test_antisymmetry(x, y):
    assert bracket(x, y) == -bracket(y, x)


@given(elements, elements, elements)
def test_jacobi_random(x, y, z):
    assert jacobi_defect(x, y, z).is_zero()


@given(elements, elements, coeffs)
def test_bilinearity(x, y, q):
    z = e(2) - e(-3) * Fraction(1, 3)
    assert bracket(x * q + y, z) == bracket(x, z) * q + bracket(y, z)


@given(elements, elements)
def test_involution_is_automorphism(x, y):
    assert involution(bracket(x, y)) == bracket(involution(x), involution(y))
    assert involution(involution(x)) == x


def test_perturbation_is_scoped_and_detected():
    base = lie.revision()
    with lie.perturbed_structure_constant(1, 2, 1):
        assert lie.is_perturbed()
        assert bracket_gen(1, 2) == e(3) * 2
        assert bracket_gen(2, 1) == e(3) * -2
        defects = [
            (a, b, c)
            for a, b, c in itertools.product(range(-3, 4), repeat=3)
            if not jacobi_defect(e(a), e(b), e(c)).is_zero()
        ]
        assert defects
    assert not lie.is_perturbed()
    assert lie.revision() > base
    assert bracket_gen(1, 2) == e(3)


def test_central_perturbation_breaks_jacobi():
    with lie.perturbed_structure_constant(2, -2, 0, 1):
        assert bracket_gen(2, -2) == e(0) * -4 + central() * Fraction(3, 2)
        assert not all(
            jacobi_defect(e(a), e(b), e(c)).is_zero()
            for a, b, c in itertools.product(range(-4, 5), repeat=3)
        )
