"""Minimal recursive-descent parser for polynomial expressions.

Grammar: integers, identifiers, ``+ - * / ^``, parentheses and unary minus.
Division is allowed only by nonzero constants.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .exact_arith import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ExpressionError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExpressionError(f"unexpected character at {pos}: {text[pos:]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ExpressionError(f"expected {op!r}, got {tok[1]!r}")

    def parse(self) -> MultiPoly:
        if not self.toks:
            raise ExpressionError("empty expression")
        result = self.expr()
        if self.i != len(self.toks):
            raise ExpressionError(f"trailing input at token {self.peek()[1]!r}")
        return result

    def expr(self):
        left = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            right = self.unary()
            if op == "*":
                left = left * right
            else:
                r = right.drop_unused()
                if r.vars or r.is_zero():
                    raise ExpressionError("division only by nonzero constants")
                left = left / r.coeff(())
        return left

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ExpressionError("exponent must be a nonnegative integer")
            return base ** val
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MultiPoly.const(Fraction(val))
        if kind == "id":
            return MultiPoly.var(val)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise ExpressionError(f"unexpected token {val!r}")


def parse_expression(text: str) -> MultiPoly:
    return _Parser(text).parse()
