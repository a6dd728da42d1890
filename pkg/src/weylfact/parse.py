"""Concrete syntax for operators in t, D (= d/dt) and E (= t*d/dt).

Grammar (whitespace insensitive; multiplication is noncommutative and
associates left to right):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | 't' | 'D' | 'E' | '(' expr ')' | '-' base
    rational := uint ('/' uint)?

The same grammar with the single symbol 'l' serves for univariate
polynomials (characteristic splits on the command line).

Evaluation of an operator expression happens over an extended table that
allows negative powers of t, because D = t^(-1) * E.  Any negative powers
left at the end are cleared by one left multiplication by t^s, recorded in
the resulting operator's t_shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Union

from .polys import UniPoly
from .pseudopoly import format_terms
from .weyl import WeylOperator

Q = Fraction


class ExprSyntaxError(ValueError):
    """Syntax error with byte offset and the token set that was expected."""

    def __init__(self, offset: int, expected: set[str], found: str):
        self.offset = offset
        self.expected = set(expected)
        self.found = found
        expected_list = ", ".join(sorted(self.expected))
        super().__init__(
            f"syntax error at offset {offset}: expected {expected_list}; found {found}"
        )


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, Sym, Neg, BinOp, Pow]


_TOKEN_CHARS = {"+", "-", "*", "^", "/", "(", ")"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """(kind, value, offset) triples; kinds: num, sym, op, end."""
    tokens = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            start = k
            while k < len(text) and text[k].isdigit():
                k += 1
            tokens.append(("num", text[start:k], start))
            continue
        if ch.isalpha():
            tokens.append(("sym", ch, k))
            k += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append(("op", ch, k))
            k += 1
            continue
        raise ExprSyntaxError(k, {"a token"}, repr(ch))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, symbols: tuple[str, ...]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.symbols = symbols

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ExprSyntaxError(offset, {repr(op)}, repr(value) if value else "end of input")
        self.take()

    def parse(self) -> Expr:
        e = self.expr()
        kind, value, offset = self.peek()
        if kind != "end":
            raise ExprSyntaxError(offset, {"'+'", "'-'", "'*'", "'^'", "end of input"}, repr(value))
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in ("+", "-"):
                self.take()
                e = BinOp(value, e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.take()
                e = BinOp("*", e, self.factor())
            else:
                return e

    def factor(self) -> Expr:
        base = self.base()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.take()
            kind, value, offset = self.take()
            if kind != "num":
                raise ExprSyntaxError(offset, {"a nonnegative integer"}, repr(value) or "end of input")
            return Pow(base, int(value))
        return base

    def base(self) -> Expr:
        kind, value, offset = self.peek()
        if kind == "op" and value == "-":
            self.take()
            return Neg(self.base())
        if kind == "num":
            self.take()
            num = int(value)
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "/":
                self.take()
                k3, v3, off3 = self.take()
                if k3 != "num" or int(v3) == 0:
                    raise ExprSyntaxError(off3, {"a positive integer"}, repr(v3) or "end of input")
                return Num(Q(num, int(v3)))
            return Num(Q(num))
        if kind == "sym":
            if value not in self.symbols:
                raise ExprSyntaxError(offset, {repr(s) for s in self.symbols}, repr(value))
            self.take()
            return Sym(value)
        if kind == "op" and value == "(":
            self.take()
            e = self.expr()
            self.expect_op(")")
            return e
        expected = {"a rational", "'('", "'-'"} | {repr(s) for s in self.symbols}
        raise ExprSyntaxError(offset, expected, repr(value) if value else "end of input")


def parse_operator(text: str) -> Expr:
    """Parse an operator expression in t, D, E."""
    if not text.strip():
        raise ExprSyntaxError(0, {"an expression"}, "empty input")
    return _Parser(text, ("t", "D", "E")).parse()


def parse_poly(text: str) -> UniPoly:
    """Parse a univariate polynomial in the symbol l."""
    if not text.strip():
        raise ExprSyntaxError(0, {"an expression"}, "empty input")
    expr = _Parser(text, ("l",)).parse()
    return _eval_poly(expr)


def _eval_poly(e: Expr) -> UniPoly:
    if isinstance(e, Num):
        return UniPoly.const(e.value)
    if isinstance(e, Sym):
        return UniPoly.x()
    if isinstance(e, Neg):
        return -_eval_poly(e.arg)
    if isinstance(e, Pow):
        return _eval_poly(e.base) ** e.exponent
    ops = {"+": UniPoly.__add__, "-": UniPoly.__sub__, "*": UniPoly.__mul__}
    return ops[e.op](_eval_poly(e.left), _eval_poly(e.right))


# extended tables: {(i, j): c} with j possibly negative, i >= 0
_XTable = dict


def _x_mul(a: _XTable, b: _XTable) -> _XTable:
    out: _XTable = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            c = c1 * c2
            # E^i1 t^j2 = t^j2 (E + j2)^i1, valid for any integer j2
            for k in range(i1, -1, -1):
                w = comb(i1, k) * j2 ** (i1 - k)
                if w:
                    key = (k + i2, j1 + j2)
                    out[key] = out.get(key, Q(0)) + c * w
    return {k: c for k, c in out.items() if c != 0}


def _x_add(a: _XTable, b: _XTable) -> _XTable:
    out = dict(a)
    for k, c in b.items():
        out[k] = out.get(k, Q(0)) + c
    return {k: c for k, c in out.items() if c != 0}


def _eval_extended(e: Expr) -> _XTable:
    if isinstance(e, Num):
        return {(0, 0): e.value} if e.value else {}
    if isinstance(e, Sym):
        return {
            "t": {(0, 1): Q(1)},
            "E": {(1, 0): Q(1)},
            "D": {(1, -1): Q(1)},
        }[e.name]
    if isinstance(e, Neg):
        return {k: -c for k, c in _eval_extended(e.arg).items()}
    if isinstance(e, Pow):
        acc: _XTable = {(0, 0): Q(1)}
        base = _eval_extended(e.base)
        for _ in range(e.exponent):
            acc = _x_mul(acc, base)
        return acc
    left, right = _eval_extended(e.left), _eval_extended(e.right)
    if e.op == "+":
        return _x_add(left, right)
    if e.op == "-":
        return _x_add(left, {k: -c for k, c in right.items()})
    return _x_mul(left, right)


def to_operator(e: Expr, truncation: int) -> WeylOperator:
    """Evaluate an expression tree into a canonically ordered operator.

    The evaluation itself is exact (expressions are finite); negative
    t-powers coming from D are cleared at the end by t^s on the left, with
    s recorded as the operator's t_shift.  Coefficients beyond the
    truncation are dropped.
    """
    table = _eval_extended(e)
    shift = max((0,) + tuple(-j for _, j in table if j < 0))
    shifted = {(i, j + shift): c for (i, j), c in table.items()}
    return WeylOperator(shifted, truncation, t_shift=shift)


def operator_from_text(text: str, truncation: int) -> WeylOperator:
    return to_operator(parse_operator(text), truncation)


def operator_to_text(L: WeylOperator) -> str:
    """Canonical rendering; parsing it back restores the same table."""
    return format_terms(L.coeffs, "E")
