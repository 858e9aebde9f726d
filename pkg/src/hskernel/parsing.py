"""Recursive-descent parser for the canonical polynomial/operator grammar.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary | "/" INT)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := INT | NAME | "D[" INT ("," INT)* "]" | "(" expr ")"

The parser is agnostic about what it builds: callers hand in ``const``,
``var`` and (optionally) ``dop`` constructors whose results support
``+ - *`` and integer powers.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Optional

_TOKEN = re.compile(
    r"\s*(?:(?P<dop>D\[\s*\d+(?:\s*,\s*\d+)*\s*\])|(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1} in {text!r}")
        self.pos = pos


def tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, const, var, dop):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.const = const
        self.var = var
        self.dop = dop

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message):
        raise ParseError(message, self.text, self.peek()[2])

    def expect_op(self, op):
        kind, value, _ = self.peek()
        if kind != "op" or value != op:
            self.error(f"expected {op!r}")
        self.take()

    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            if op == "*":
                value = value * self.unary()
            else:
                kind, num, _ = self.peek()
                if kind != "num":
                    self.error("only division by an integer literal is supported")
                self.take()
                if int(num) == 0:
                    raise ZeroDivisionError(f"division by zero in {self.text!r}")
                value = value * self.const(Fraction(1, int(num)))
        return value

    def unary(self):
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return self.const(-1) * self.unary()
        if self.peek()[0] == "op" and self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            kind, num, _ = self.peek()
            if kind != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            return base ** int(num)
        return base

    def atom(self):
        kind, value, pos = self.peek()
        if kind == "num":
            self.take()
            return self.const(int(value))
        if kind == "name":
            self.take()
            try:
                return self.var(value)
            except KeyError:
                raise ParseError(f"unknown variable {value!r}", self.text, pos) from None
        if kind == "dop":
            if self.dop is None:
                self.error("operator symbol not allowed here")
            self.take()
            idx = tuple(int(s) for s in value[2:-1].split(","))
            try:
                return self.dop(idx)
            except ValueError as exc:
                raise ParseError(str(exc), self.text, pos) from None
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            self.expect_op(")")
            return inner
        self.error("expected a number, variable or '('")


def parse_expression(
    text: str,
    const: Callable,
    var: Callable,
    dop: Optional[Callable] = None,
):
    return _Parser(text, const, var, dop).parse()
