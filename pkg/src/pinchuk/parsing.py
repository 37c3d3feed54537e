"""Text format for polynomials.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'

``^`` binds tighter than ``*``, which binds tighter than ``+``/``-``.
A slash is only allowed inside a rational literal such as ``75/4``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .polynomial import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif name is not None:
            tokens.append(("name", name, start))
        else:
            if sym not in "+-*^()/":
                raise PolySyntaxError(f"unexpected character {sym!r}", start)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str):
        kind, val, off = self.take()
        if kind != "sym" or val != sym:
            raise PolySyntaxError(f"expected {sym!r}", off)

    def parse(self) -> MultiPoly:
        result = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise PolySyntaxError(f"unexpected {val!r}", off)
        return result

    def expr(self) -> MultiPoly:
        acc = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if val == "+" else acc - rhs
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                acc = acc * self.unary()
            else:
                return acc

    def unary(self) -> MultiPoly:
        kind, val, _ = self.peek()
        if kind == "sym" and val in "+-":
            self.take()
            operand = self.unary()
            return -operand if val == "-" else operand
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "sym" and val == "^":
            self.take()
            kind, val, off = self.take()
            if kind != "num":
                raise PolySyntaxError("expected integer exponent", off)
            return base ** int(val)
        return base

    def atom(self) -> MultiPoly:
        kind, val, off = self.take()
        if kind == "num":
            value = Fraction(int(val))
            nk, nv, _ = self.peek()
            if nk == "sym" and nv == "/":
                self.take()
                dk, dv, doff = self.take()
                if dk != "num":
                    raise PolySyntaxError("expected denominator", doff)
                if int(dv) == 0:
                    raise PolySyntaxError("zero denominator", doff)
                value = Fraction(int(val), int(dv))
            return MultiPoly.constant(value, self.variables)
        if kind == "name":
            if val not in self.variables:
                raise PolySyntaxError(f"unknown variable {val!r}", off)
            return MultiPoly.var(val, self.variables)
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise PolySyntaxError("unexpected end of input", off)
        raise PolySyntaxError(f"unexpected {val!r}", off)


def parse_poly(text: str, variables: Sequence[str]) -> MultiPoly:
    """Parse ``text`` into a canonical polynomial over ``variables``.

    >>> str(parse_poly("(x*y-1)", ["x", "y"]))
    'x*y - 1'
    """
    return _Parser(text, variables).parse()
