"""Recursive-descent parser for rational expressions in t (and tower generators).

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' ['-'|'+'] integer)?
    base   := integer | name | '(' expr ')' | '-' factor | '+' factor

'^' binds tighter than unary minus, so -t^2 is -(t^2).
"""

from __future__ import annotations

import re

from .arith import RatFunc

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class _Parser:
    def __init__(self, text: str, symbols):
        self.text = text
        self.symbols = symbols
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            start = m.start(m.lastindex)
            kind = ("int", "name", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            found = "end of input" if kind is None else repr(val)
            raise ParseError(f"expected {op!r}, found {found}", off)
        self.i += 1

    def parse(self):
        value = self.expr()
        kind, val, off = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", off)
        return value

    def expr(self):
        value = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "*/":
                self.i += 1
                rhs = self.factor()
                if val == "*":
                    value = value * rhs
                else:
                    if not rhs:
                        raise ParseError("division by zero", off)
                    value = value / rhs
            else:
                return value

    def factor(self):
        value = self.base()
        kind, val, off = self.peek()
        if kind == "op" and val == "^":
            self.i += 1
            sign = 1
            kind, val, eoff = self.peek()
            if kind == "op" and val in "+-":
                self.i += 1
                sign = -1 if val == "-" else 1
                kind, val, eoff = self.peek()
            if kind != "int":
                raise ParseError("expected an integer exponent", eoff)
            self.i += 1
            e = sign * int(val)
            if e < 0 and not value:
                raise ParseError("division by zero", off)
            value = value ** e
        return value

    def base(self):
        kind, val, off = self.take()
        if kind == "int":
            return RatFunc(int(val))
        if kind == "name":
            if val == "t":
                return RatFunc.t()
            if val in self.symbols:
                return self.symbols[val]
            raise ParseError(f"unknown symbol {val!r}", off)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "op" and val == "+":
            return self.factor()
        found = "end of input" if kind is None else repr(val)
        raise ParseError(f"unexpected {found}", off)


def parse_expr(text: str, symbols=None):
    """Parse text into a RatFunc, or into a tower element when ``symbols``
    maps generator names to elements."""
    return _Parser(text, dict(symbols or {})).parse()
