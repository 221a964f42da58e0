"""Expression language for phase-space polynomials.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("-" | "+") unary | power
    power  := atom ("^" unary)?
    atom   := NUMBER | NAME | "sqrt" "(" expr ")" | "(" expr ")"

``NAME`` is one of ``q1 q2 p1 p2 i sqrt2 hbar`` or ``sqrtN`` for an integer
``N`` (the spelling numbers print with); ``hbar`` is accepted in
formal mode only. Numbers are integers or decimals (read exactly). Products
are pointwise, ``/`` divides by a nonzero constant and ``^`` takes a
nonnegative integer exponent. ``sqrt`` accepts nonnegative rational constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadExpression, ParseError
from .field import SQRT2, I, Number
from .star import VARIABLES, PhaseSpaceFunction

__all__ = ["Token", "parse_expression", "tokenize"]

PSF = PhaseSpaceFunction

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "op" or "end"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Split ``text`` into tokens; ``column`` is the 1-based column of ``text[0]``."""
    tokens, pos = [], 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if not rest.strip():
                tokens.append(Token("end", "", line, column + len(text)))
                return tokens
            start = pos + len(rest) - len(rest.lstrip())
            raise ParseError("unexpected character", line, column + start, text[start])
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), line, column + m.start(kind)))
        pos = m.end()


class _Parser:
    def __init__(self, tokens, formal):
        self.tokens = tokens
        self.pos = 0
        self.formal = formal

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None, cls=ParseError):
        tok = tok or self.tok
        raise cls(message, tok.line, tok.column, tok.text or "<end>")

    def expect(self, text):
        if self.tok.text != text:
            self.fail(f"expected {text!r}")
        return self.advance()

    def parse(self) -> PSF:
        value = self.expr()
        if self.tok.kind != "end":
            self.fail("unexpected token")
        return value

    def expr(self):
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.advance()
            rhs = self.unary()
            if op.text == "*":
                value = value * rhs
            else:
                if not rhs.is_constant or not rhs:
                    self.fail("division by a non-constant or zero expression", op, BadExpression)
                value = value / rhs.constant_value()
        return value

    def unary(self):
        if self.tok.text == "-":
            self.advance()
            return -self.unary()
        if self.tok.text == "+":
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.text != "^":
            return base
        op = self.advance()
        exp = self.unary()
        n = _as_int(exp)
        if n is None or n < 0:
            self.fail("exponent must be a nonnegative integer constant", op, BadExpression)
        return base ** n

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return PSF.constant(Fraction(tok.text), formal=self.formal)
        if tok.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if tok.kind == "name":
            self.advance()
            name = tok.text
            if name in VARIABLES:
                return PSF.variable(name, formal=self.formal)
            if name == "i":
                return PSF.constant(I, formal=self.formal)
            if name == "sqrt2":
                return PSF.constant(SQRT2, formal=self.formal)
            if re.fullmatch(r"sqrt\d+", name):
                return PSF.constant(Number.sqrt(int(name[4:])), formal=self.formal)
            if name == "hbar":
                if not self.formal:
                    self.fail("hbar is only available in formal mode", tok, BadExpression)
                return PSF.hbar()
            if name == "sqrt":
                self.expect("(")
                arg = self.expr()
                close = self.expect(")")
                c = arg.constant_value() if arg.is_constant else None
                if c is None or not c.is_rational or c.rational() < 0:
                    self.fail("sqrt needs a nonnegative rational constant", close, BadExpression)
                return PSF.constant(Number.sqrt(c.rational()), formal=self.formal)
            self.fail(f"unknown name {name!r}", tok)
        if tok.kind == "end":
            if self.pos and self.tokens[self.pos - 1].kind == "op":
                self.fail("dangling operator", self.tokens[self.pos - 1])
            self.fail("unexpected end of expression")
        self.fail("unexpected token")


def _as_int(F: PSF):
    if not F.is_constant:
        return None
    c = F.constant_value()
    if not c.is_rational or c.rational().denominator != 1:
        return None
    return int(c.rational())


def parse_expression(text: str, *, formal: bool = False, line: int = 1, column: int = 1) -> PhaseSpaceFunction:
    """Parse ``text`` into a polynomial; errors report ``line``/``column`` positions."""
    return _Parser(tokenize(text, line, column), formal).parse()
