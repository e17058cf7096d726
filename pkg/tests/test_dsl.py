import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from virasoro.dsl import (
    MAX_EXPONENT,
    MAX_INDEX,
    Central,
    Gen,
    Group,
    Mul,
    Neg,
    Num,
    Pow,
    Sub,
    Add,
    element_from_dict,
    format_element,
    format_rational,
    from_json,
    parse,
    parse_element,
    parse_rational,
    to_element,
    to_json,
)
from virasoro.errors import SchemaError, SourceError
from virasoro.pbw import ANN, ASC, DESC, HW, UEAElement, reduce_mod_left_ideal
from virasoro.sampling import random_element

PRESETS = [ASC, DESC, HW, ANN(1), ANN(-1), ANN(2), ANN(-2)]


def test_parse_tree_shapes():
    assert parse("c") == Central()
    assert parse("e(-3)") == Gen(-3)
    assert parse("2/3 * e(0)") == Mul(Num(Fraction(2, 3)), Gen(0))
    assert parse("e(1)^3 - 6*e(2)*e(1) + 6*e(3)") == Add(
        Sub(Pow(Gen(1), 3), Mul(Mul(Num(Fraction(6)), Gen(2)), Gen(1))),
        Mul(Num(Fraction(6)), Gen(3)),
    )
    assert parse("-e(1)^2") == Neg(Pow(Gen(1), 2))
    assert parse("(e(2))^2") == Pow(Group(Gen(2)), 2)
    assert parse("  e ( 1 )\n*\te(-1) ") == Mul(Gen(1), Gen(-1))


def test_to_element_examples():
    assert to_element(parse("e(1)*e(-1)"), ASC) == parse_element("e(-1)*e(1) - 2*e(0)")
    assert format_element(parse_element("2/3 * e(0)")) == "2/3*e(0)"
    u = parse_element("e(-2)*(2*e(2) - e(1)^2)", DESC)
    assert format_element(u) == "-e(1)^2*e(-2) - 6*e(1)*e(-1) + 2*e(2)*e(-2) - c + 2*e(0)"
    assert parse_element("-e(1)^3") == parse_element("(-1)*e(1)*e(1)*e(1)")


def test_format_examples():
    lhs = parse_element("e(-1)^3*(e(1)^3 - 6*e(2)*e(1) + 6*e(3))")
    assert format_element(reduce_mod_left_ideal(lhs, -1)) == "48*e(0)^3 - 144*e(0)^2 + 96*e(0)"
    assert format_element(UEAElement()) == "0"
    assert format_element(parse_element("1/2*c^2 - 3")) == "1/2*c^2 - 3"
    assert format_element(parse_element("e(0)")) == "e(0)"


def test_rationals():
    assert parse_rational("-7/21") == Fraction(-1, 3)
    assert parse_rational(" 4 ") == 4
    for bad in ("0.5", "1e3", "1/0", "", "1/-2", "--1", "inf"):
        with pytest.raises(ValueError):
            parse_rational(bad)
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(5) == "5"


# (input, offset of the first offending token, found)
MALFORMED = [
    ("", 0, "end of input"),
    ("e(1) e(2)", 5, "'e'"),
    ("e(1", 3, "end of input"),
    ("e(1))", 4, "')'"),
    ("e[1]", 1, "'['"),
    ("e(1.5)", 3, "'.'"),
    ("2 * ", 4, "end of input"),
    ("e(1) + * e(2)", 7, "'*'"),
    ("e(x)", 2, "'x'"),
    ("e()", 2, "')'"),
    ("e(--1)", 3, "'-'"),
    ("3^2", 1, "'^'"),
    ("(e(1) + e(2))^2", 13, "'^'"),
    ("e(1)^", 5, "end of input"),
    ("e(1)^-1", 5, "'-'"),
    ("e(1)^65", 5, "'65'"),
    ("e(10001)", 2, "'10001'"),
    ("1/0 * e(1)", 2, "'0'"),
    ("e(1) *\n  e(2) + f", 16, "'f'"),
    ("c c", 2, "'c'"),
    ("()", 1, "')'"),
    ("e(1) 2", 5, "'2'"),
]


@pytest.mark.parametrize("text, offset, found", MALFORMED)
def test_malformed_inputs_point_at_first_bad_token(text, offset, found):
    with pytest.raises(SourceError) as info:
        parse(text)
    err = info.value
    assert err.offset == offset
    assert err.found == found
    assert err.expected
    before = text[:offset]
    assert err.line == before.count("\n") + 1
    assert err.column == offset - (before.rfind("\n") + 1) + 1


def test_multiline_position():
    with pytest.raises(SourceError) as info:
        parse("e(1) *\n  e(2) + f")
    assert (info.value.line, info.value.column) == (2, 10)


def test_limits_are_exact():
    assert parse(f"e({MAX_INDEX})") == Gen(MAX_INDEX)
    assert parse(f"e(-{MAX_INDEX})") == Gen(-MAX_INDEX)
    assert parse(f"c^{MAX_EXPONENT}") == Pow(Central(), MAX_EXPONENT)
    with pytest.raises(SourceError):
        parse("9" * 500)


def test_two_hundred_random_round_trips():
    rng = random.Random(11)
    for n in range(200):
        order = PRESETS[n % len(PRESETS)]
        u = random_element(rng, order, max_terms=4, max_len=4)
        text = format_element(u)
        assert parse_element(text, order) == u, text
        assert format_element(parse_element(text, order)) == text


@given(st.integers(0, 10 ** 6), st.sampled_from(PRESETS))
def test_json_round_trip_is_byte_stable(seed, order):
    u = random_element(random.Random(seed), order)
    blob = to_json(u)
    back = from_json(blob)
    assert back == u and back.order == order
    assert to_json(back) == blob
    assert blob == json.dumps(json.loads(blob), sort_keys=True, separators=(",", ":"))


def test_json_shape():
    u = parse_element("e(1)*e(-1)", DESC)
    assert to_json(u) == (
        '{"order":"desc","schema":1,"terms":['
        '{"c":0,"coeff":"1/1","word":[[1,1],[-1,1]]}]}'
    )
    assert to_json(UEAElement()) == '{"order":"asc","schema":1,"terms":[]}'


def _doc(**term):
    base = {"coeff": "1/1", "word": [[1, 1]], "c": 0}
    base.update(term)
    return {"schema": 1, "order": "asc", "terms": [base]}


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"schema": 2, "order": "asc", "terms": []}, "$.schema"),
        ({"schema": 1, "order": "upward", "terms": []}, "$.order"),
        ({"schema": 1, "terms": []}, "$"),
        (_doc(coeff="0.5"), "$.terms[0].coeff"),
        (_doc(coeff="1/0"), "$.terms[0].coeff"),
        (_doc(word=[[1]]), "$.terms[0].word[0]"),
        (_doc(word=[[1, 0]]), "$.terms[0].word[0][1]"),
        (_doc(c=-1), "$.terms[0].c"),
        (_doc(extra=True), "$.terms[0]"),
        (_doc(coeff="0/1"), "$.terms[0].coeff"),
        (_doc(word=[[2, 1], [1, 1]]), "$.terms[0].word"),
        (_doc(word=[[1, 1], [1, 2]]), "$.terms[0].word"),
    ],
)
def test_schema_errors_carry_json_paths(doc, path):
    with pytest.raises(SchemaError) as info:
        element_from_dict(doc)
    assert info.value.path == path


def test_duplicate_terms_and_bad_json():
    doc = {"schema": 1, "order": "asc", "terms": [_doc()["terms"][0], _doc()["terms"][0]]}
    with pytest.raises(SchemaError, match="duplicate"):
        element_from_dict(doc)
    with pytest.raises(SchemaError):
        from_json("{not json")
