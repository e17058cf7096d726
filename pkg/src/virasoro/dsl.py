"""Text and JSON forms for enveloping-algebra elements.

Grammar (multiplication is always explicit; products keep their written
left-to-right order)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' nat)?
    atom   := 'e' '(' int ')' | 'c' | rational | '(' expr ')'
    rational := nat ('/' nat)?

Only generator atoms (or a parenthesized generator atom) may be raised to a
power. There is no decimal notation.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import jsonschema

from .errors import SchemaError, SourceError
from .pbw import (
    ASC,
    OrderSpec,
    PBWMonomial,
    UEAElement,
    central,
    gen,
    one,
    scalar,
)

__all__ = [
    "Num",
    "Gen",
    "Central",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "Group",
    "parse",
    "to_element",
    "parse_element",
    "format_element",
    "format_monomial",
    "format_rational",
    "parse_rational",
    "to_json",
    "from_json",
    "JSON_SCHEMA",
    "MAX_INDEX",
    "MAX_EXPONENT",
]

MAX_INDEX = 10_000
MAX_EXPONENT = 64
MAX_LITERAL_DIGITS = 400


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Central:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Group:
    inner: "Node"


Node = Union[Num, Gen, Central, Neg, Add, Sub, Mul, Pow, Group]

_TOKEN = re.compile(r"\s*(?:(\d+)|(e)|(c)|([-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                tokens.append(("EOF", "end of input", len(text)))
                return tokens
            where = pos + len(rest) - len(stripped)
            raise SourceError(
                text, where, ["integer", "'e'", "'c'", "operator"], repr(stripped[0])
            )
        start = m.start(m.lastindex)
        kind = {1: "NUM", 2: "e", 3: "c", 4: m.group(4)}[m.lastindex]
        tokens.append((kind, m.group(m.lastindex), start))
        pos = m.end()


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def fail(self, expected, tok=None):
        kind, value, offset = tok or self.tok
        found = "end of input" if kind == "EOF" else repr(value)
        raise SourceError(self.text, offset, expected, found)

    def take(self, kind):
        tok = self.tok
        if tok[0] != kind:
            self.fail([repr(kind) if kind != "NUM" else "integer"])
        self.i += 1
        return tok

    def nat(self, limit=None, what="integer"):
        tok = self.tok
        if tok[0] != "NUM":
            self.fail([what])
        if len(tok[1]) > MAX_LITERAL_DIGITS or (limit is not None and int(tok[1]) > limit):
            raise SourceError(self.text, tok[2], [f"{what} <= {limit}" if limit else what], repr(tok[1]))
        self.i += 1
        return int(tok[1])

    def parse(self):
        node = self.expr()
        if self.tok[0] != "EOF":
            self.fail(["'+'", "'-'", "'*'", "end of input"])
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] in ("+", "-"):
            op = self.take(self.tok[0])[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "*":
            self.i += 1
            node = Mul(node, self.unary())
        return node

    def unary(self):
        if self.tok[0] == "-":
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.tok[0] == "^":
            caret = self.tok
            inner = node.inner if isinstance(node, Group) else node
            if not isinstance(inner, (Gen, Central)):
                self.fail(["'*'", "'+'", "'-'", "end of input"], caret)
            self.i += 1
            node = Pow(node, self.nat(MAX_EXPONENT, "exponent"))
        return node

    def atom(self):
        kind = self.tok[0]
        if kind == "e":
            self.i += 1
            self.take("(")
            neg = False
            if self.tok[0] == "-":
                neg = True
                self.i += 1
            index = self.nat(MAX_INDEX, "index")
            self.take(")")
            return Gen(-index if neg else index)
        if kind == "c":
            self.i += 1
            return Central()
        if kind == "NUM":
            num = self.nat()
            if self.tok[0] == "/":
                self.i += 1
                tok = self.tok
                den = self.nat(what="denominator")
                if den == 0:
                    raise SourceError(self.text, tok[2], ["nonzero denominator"], "'0'")
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return Group(inner)
        self.fail(["'e'", "'c'", "integer", "'('", "'-'"])


def parse(text: str) -> Node:
    """Parse ``text`` into an expression tree; raises :class:`SourceError`."""
    return _Parser(text).parse()


def to_element(tree: Node, order: OrderSpec = ASC) -> UEAElement:
    if isinstance(tree, Num):
        return scalar(tree.value, order)
    if isinstance(tree, Gen):
        return gen(tree.index, order)
    if isinstance(tree, Central):
        return central(order)
    if isinstance(tree, Group):
        return to_element(tree.inner, order)
    if isinstance(tree, Neg):
        return -to_element(tree.operand, order)
    if isinstance(tree, Add):
        return to_element(tree.left, order) + to_element(tree.right, order)
    if isinstance(tree, Sub):
        return to_element(tree.left, order) - to_element(tree.right, order)
    if isinstance(tree, Mul):
        return to_element(tree.left, order) * to_element(tree.right, order)
    if isinstance(tree, Pow):
        base = to_element(tree.base, order)
        out = one(order)
        for _ in range(tree.exponent):
            out = out * base
        return out
    raise TypeError(f"not an expression node: {tree!r}")


def parse_element(text: str, order: OrderSpec = ASC) -> UEAElement:
    return to_element(parse(text), order)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q`` exactly; floats are refused."""
    m = re.fullmatch(r"\s*(-?\d+)(?:/(\d+))?\s*", text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r} (use p or p/q)")
    den = int(m.group(2) or 1)
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_monomial(m: PBWMonomial) -> str:
    parts = [f"e({i})" if k == 1 else f"e({i})^{k}" for i, k in m.word]
    if m.central:
        parts.append("c" if m.central == 1 else f"c^{m.central}")
    return "*".join(parts) if parts else "1"


def format_element(u: UEAElement) -> str:
    """Canonical text: factors in the element's order, terms by display key."""
    out = []
    for m, q in u.items():
        body = format_monomial(m)
        mag = abs(q)
        if body == "1":
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(f"-{text}" if q < 0 else text)
        else:
            out.append(f"- {text}" if q < 0 else f"+ {text}")
    return " ".join(out) if out else "0"


JSON_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema", "order", "terms"],
    "additionalProperties": False,
    "properties": {
        "schema": {"const": 1},
        "order": {"type": "string", "pattern": r"^(asc|desc|hw|ann:-?[0-9]+)$"},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "word", "c"],
                "additionalProperties": False,
                "properties": {
                    "coeff": {"type": "string", "pattern": r"^-?[0-9]+/[1-9][0-9]*$"},
                    "word": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "prefixItems": [{"type": "integer"}, {"type": "integer", "minimum": 1}],
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                    "c": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(JSON_SCHEMA)


def element_to_dict(u: UEAElement) -> dict:
    terms = []
    for m, q in u.items():
        terms.append(
            {
                "coeff": f"{q.numerator}/{q.denominator}",
                "word": [[i, k] for i, k in m.word],
                "c": m.central,
            }
        )
    return {"schema": 1, "order": str(u.order), "terms": terms}


def to_json(u: UEAElement) -> str:
    """Byte-stable JSON: sorted keys, compact separators, ``num/den`` strings."""
    return json.dumps(element_to_dict(u), sort_keys=True, separators=(",", ":"))


def element_from_dict(data) -> UEAElement:
    errors = sorted(_VALIDATOR.iter_errors(data), key=lambda err: list(err.absolute_path))
    if errors:
        err = errors[0]
        raise SchemaError(err.json_path, err.message)
    order = OrderSpec.from_string(data["order"])
    terms: dict[PBWMonomial, Fraction] = {}
    for n, t in enumerate(data["terms"]):
        path = f"$.terms[{n}]"
        num, den = t["coeff"].split("/")
        q = Fraction(int(num), int(den))
        if q == 0:
            raise SchemaError(f"{path}.coeff", "zero coefficients are not stored")
        try:
            m = PBWMonomial(tuple((i, k) for i, k in t["word"]), t["c"])
        except ValueError as exc:
            raise SchemaError(f"{path}.word", str(exc)) from None
        if not order.is_normal(m.letters()):
            raise SchemaError(f"{path}.word", f"word is not normal under {order}")
        if m in terms:
            raise SchemaError(f"{path}.word", "duplicate monomial")
        terms[m] = q
    return UEAElement(terms, order)


def from_json(text: str) -> UEAElement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    return element_from_dict(data)
