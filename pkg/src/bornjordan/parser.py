"""Recursive-descent parser for polynomial expressions in p, q, hbar and i.

Grammar (whitespace is insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := 'p' | 'q' | 'hbar' | 'i' | rational | '(' expr ')'

``rational`` is ``digits`` or ``digits/digits``.  Multiplication must be
written out.  In noncommutative mode factor order is kept; in classical mode
products commute and ``hbar``/``i`` are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import HBAR, I, NCPoly, p, q
from .quantize import ClassicalPoly

CLASSICAL = "classical"
NONCOMMUTATIVE = "noncommutative"
MODES = (CLASSICAL, NONCOMMUTATIVE)

MAX_DEPTH = 100
MAX_EXPONENT = 64
MAX_TERMS = 20_000


class ParseError(ValueError):
    """Malformed input; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.message = message
        self.position = position


class ModeError(ParseError):
    """Syntactically valid input using a symbol the mode forbids."""


@dataclass(frozen=True)
class Number:
    value: Fraction
    pos: int = 0


@dataclass(frozen=True)
class Symbol:
    name: str
    pos: int = 0


@dataclass(frozen=True)
class Power:
    base: Node
    exponent: int
    pos: int = 0


@dataclass(frozen=True)
class Product:
    factors: tuple[Node, ...]
    pos: int = 0


@dataclass(frozen=True)
class Sum:
    """Signed terms: ``terms[k] = (+1 or -1, node)``."""

    terms: tuple[tuple[int, Node], ...]
    pos: int = 0


Node = Union[Number, Symbol, Power, Product, Sum]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:\s*/\s*\d+)?)
  | (?P<name>[A-Za-z_]\w*)
  | (?P<op>[-+*^()])
""", re.VERBOSE)

SYMBOLS = ("p", "q", "hbar", "i")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, mode: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.mode = mode
        self.depth = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, text, pos = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {found}", pos)

    def parse(self) -> Node:
        node = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r} (multiplication must be explicit)", pos)
        return node

    def expr(self) -> Node:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError(f"nesting deeper than {MAX_DEPTH}", self.peek()[2])
        start = self.peek()[2]
        sign = 1
        if self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        terms = [(sign, self.term())]
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        self.depth -= 1
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms), start)

    def term(self) -> Node:
        start = self.peek()[2]
        factors = [self.factor()]
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors), start)

    def factor(self) -> Node:
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "number" or "/" in text:
                raise ParseError("exponent must be a nonnegative integer literal", pos)
            n = int(text)
            if n > MAX_EXPONENT:
                raise ParseError(f"exponent {n} exceeds limit {MAX_EXPONENT}", pos)
            return Power(base, n, pos)
        return base

    def base(self) -> Node:
        kind, text, pos = self.take()
        if kind == "number":
            if "/" in text:
                num, den = (int(x) for x in text.split("/"))
                if den == 0:
                    raise ParseError("zero denominator", pos)
                return Number(Fraction(num, den), pos)
            return Number(Fraction(int(text)), pos)
        if kind == "name":
            if text not in SYMBOLS:
                raise ParseError(f"unknown symbol {text!r}", pos)
            if self.mode == CLASSICAL and text in ("hbar", "i"):
                raise ModeError(f"{text!r} is not allowed in classical mode", pos)
            return Symbol(text, pos)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"expected p, q, hbar, i, a number or '(', found {found}", pos)


def parse(text: str, mode: str = NONCOMMUTATIVE) -> Node:
    """Parse ``text`` into an expression tree.

    Raises:
        ParseError: malformed input, with the offending position.
        ModeError: ``hbar`` or ``i`` in classical mode.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    return _Parser(text, mode).parse()


def _guard(size: int, pos: int) -> None:
    if size > MAX_TERMS:
        raise ParseError(f"expansion exceeds {MAX_TERMS} terms", pos)


def to_ncpoly(node: Node) -> NCPoly:
    """Evaluate a tree with factor order preserved."""
    if isinstance(node, Number):
        return NCPoly.scalar(node.value)
    if isinstance(node, Symbol):
        return {"p": p, "q": q, "hbar": NCPoly.scalar(HBAR), "i": NCPoly.scalar(I)}[node.name]
    if isinstance(node, Power):
        base = to_ncpoly(node.base)
        out = NCPoly.one()
        for _ in range(node.exponent):
            _guard(len(out) * max(len(base), 1), node.pos)
            out = out * base
        return out
    if isinstance(node, Product):
        out = NCPoly.one()
        for f in node.factors:
            fp = to_ncpoly(f)
            _guard(len(out) * max(len(fp), 1), node.pos)
            out = out * fp
        return out
    out = NCPoly.zero()
    for sign, t in node.terms:
        out = out + to_ncpoly(t) if sign > 0 else out - to_ncpoly(t)
    return out


def to_classical(node: Node) -> ClassicalPoly:
    """Evaluate a tree as a commutative polynomial."""
    if isinstance(node, Number):
        return ClassicalPoly.monomial(0, 0, node.value)
    if isinstance(node, Symbol):
        if node.name == "p":
            return ClassicalPoly.monomial(1, 0)
        if node.name == "q":
            return ClassicalPoly.monomial(0, 1)
        raise ModeError(f"{node.name!r} is not allowed in classical mode", node.pos)
    if isinstance(node, Power):
        return to_classical(node.base) ** node.exponent
    if isinstance(node, Product):
        out = ClassicalPoly.monomial(0, 0)
        for f in node.factors:
            out = out * to_classical(f)
        return out
    out = ClassicalPoly()
    for sign, t in node.terms:
        out = out + to_classical(t) if sign > 0 else out - to_classical(t)
    return out


def parse_nc(text: str) -> NCPoly:
    return to_ncpoly(parse(text, NONCOMMUTATIVE))


def parse_classical(text: str) -> ClassicalPoly:
    return to_classical(parse(text, CLASSICAL))
