"""Text syntax for elements of ``B``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | base ('^' uint)?
    base   := rational | variable | '(' expr ')'

Rationals are integers or ``p/q``; variables are ``T, X, Y, z`` and ``P``,
which is shorthand for ``X + T*Y``.  Unary minus binds looser than ``^``, so
``-T^2`` is ``-(T^2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .poly import Poly
from .rings import ExtElem, ExtRingSpec

MAX_EXPONENT = 1000
KNOWN_VARIABLES = ("T", "X", "Y", "z", "P")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: frozenset[str] = frozenset()):
        detail = f"syntax error at offset {position}: {message}"
        if expected:
            detail += f"; expected {' or '.join(sorted(expected))}"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class UnknownVariableError(ParseError):
    def __init__(self, name: str, position: int):
        super().__init__(
            f"unknown variable {name!r}", position, frozenset(KNOWN_VARIABLES)
        )
        self.name = name


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Sum:
    terms: tuple["Expr", ...]


@dataclass(frozen=True)
class Product:
    factors: tuple["Expr", ...]


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


Expr = Union[Num, Var, Neg, Sum, Product, Power]

# P is expanded as soon as it is read
P_SUGAR = Sum((Var("X"), Product((Var("T"), Var("Y")))))


# -- tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), pos))
        elif m.group(2) is not None:
            tokens.append(("ident", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*^/()":
                raise ParseError(f"unexpected character {ch!r}", pos)
            tokens.append((ch, ch, pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, expected: set[str]):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"unexpected {found}", pos, frozenset(expected))

    def parse(self) -> Expr:
        node = self.expr()
        if self.peek()[0] != "eof":
            self.fail({"'+'", "'-'", "'*'", "end of input"})
        return node

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            terms.append(t if op == "+" else Neg(t))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.peek()[0] == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.base()
        if self.peek()[0] == "^":
            self.take()
            kind, value, pos = self.peek()
            if kind != "int":
                self.fail({"unsigned integer"})
            self.take()
            n = int(value)
            if n > MAX_EXPONENT:
                raise ParseError(f"exponent {n} exceeds limit {MAX_EXPONENT}", pos)
            node = Power(node, n)
        return node

    def base(self) -> Expr:
        kind, value, pos = self.peek()
        if kind == "int":
            self.take()
            num = Fraction(int(value))
            if self.peek()[0] == "/":
                self.take()
                k2, v2, p2 = self.peek()
                if k2 != "int":
                    self.fail({"unsigned integer"})
                self.take()
                if int(v2) == 0:
                    raise ParseError("zero denominator", p2)
                num /= int(v2)
            return Num(num)
        if kind == "ident":
            if value not in KNOWN_VARIABLES:
                raise UnknownVariableError(value, pos)
            self.take()
            return P_SUGAR if value == "P" else Var(value)
        if kind == "(":
            self.take()
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail({"')'", "'+'", "'-'", "'*'"})
            self.take()
            return node
        self.fail({"number", "variable", "'('", "'-'"})


def parse_expr(text: str) -> Expr:
    parser = _Parser(text)
    try:
        return parser.parse()
    except RecursionError:
        raise ParseError("expression nested too deeply", parser.peek()[2]) from None


def evaluate(node: Expr, ring: ExtRingSpec) -> ExtElem:
    if isinstance(node, Num):
        return ring.elem(node.value)
    if isinstance(node, Var):
        return ring.var(node.name)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ring)
    if isinstance(node, Sum):
        acc = ring.zero
        for t in node.terms:
            acc = acc + evaluate(t, ring)
        return acc
    if isinstance(node, Product):
        acc = ring.one
        for f in node.factors:
            acc = acc * evaluate(f, ring)
        return acc
    if isinstance(node, Power):
        return evaluate(node.base, ring) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def parse_element(text: str, ring: ExtRingSpec) -> ExtElem:
    return evaluate(parse_expr(text), ring)


def print_poly(p: Poly) -> str:
    return str(p)


def print_expr(x: ExtElem) -> str:
    """Canonical form ``<f0> + (<f1>)*z``; zero parts are omitted and a
    single-term ``f1`` drops its parentheses."""
    f0, f1 = x.f0, x.f1
    if f1.is_zero():
        return str(f0)
    if len(f1) == 1:
        body = str(f1)
        sign = "-" if body.startswith("-") else "+"
        body = body.lstrip("-")
        zpart = "z" if body == "1" else f"{body}*z"
    else:
        zpart, sign = f"({f1})*z", "+"
    if f0.is_zero():
        return zpart if sign == "+" else "-" + zpart
    return f"{f0} {sign} {zpart}"
