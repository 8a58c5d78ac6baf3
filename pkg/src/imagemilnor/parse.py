"""Tokenizer and polynomial expression parser.

Syntax: identifiers are variables, ``^`` (or ``**``) is a power with a
nonnegative integer exponent, ``*`` is explicit multiplication, integer
literals combine with ``/`` into rationals.  The identifier ``t`` is the
unfolding parameter and lands in the coefficients.  Division is allowed
only by expressions free of ambient variables.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Sequence

from .poly import Polynomial
from .ratfunc import PARAMETER, RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<num>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*/^(){},;=])"
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind in ("num", "ident", "op"):
                tokens.append(Token(kind, "^" if chunk == "**" else chunk, line, col))
            col += len(chunk)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


class TokenStream:
    def __init__(self, tokens: Sequence[Token]):
        self.tokens = list(tokens)
        self.pos = 0

    @property
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.peek.kind in ("op", "ident") and self.peek.text == text:
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        tok = self.peek
        if tok.text != text or tok.kind not in ("op", "ident"):
            found = tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", tok.line, tok.column)
        return self.next()

    def error(self, message: str, tok: Token = None) -> ParseError:
        tok = tok or self.peek
        return ParseError(message, tok.line, tok.column)


class ExpressionParser:
    """Recursive-descent parser producing polynomials over a fixed ambient."""

    def __init__(self, stream: TokenStream, variables: Sequence[str]):
        self.s = stream
        self.variables = tuple(variables)
        self.used_parameter = False

    def parse_expression(self) -> Polynomial:
        s = self.s
        if s.accept("-"):
            acc = -self._term()
        else:
            s.accept("+")
            acc = self._term()
        while True:
            if s.accept("+"):
                acc = acc + self._term()
            elif s.accept("-"):
                acc = acc - self._term()
            else:
                return acc

    def _term(self) -> Polynomial:
        acc = self._unary()
        while True:
            if self.s.accept("*"):
                acc = acc * self._unary()
            elif self.s.peek.text == "/" and self.s.peek.kind == "op":
                tok = self.s.next()
                div = self._unary()
                if div.degree() > 0:
                    raise self.s.error("division by a non-constant expression", tok)
                c = div.constant_term()
                if c == 0:
                    raise self.s.error("division by zero", tok)
                acc = acc / c
            else:
                return acc

    def _unary(self) -> Polynomial:
        if self.s.accept("-"):
            return -self._unary()
        if self.s.accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        if self.s.accept("^"):
            tok = self.s.next()
            if tok.kind != "num":
                raise self.s.error("exponent must be a nonnegative integer literal", tok)
            return base ** int(tok.text)
        return base

    def _atom(self) -> Polynomial:
        tok = self.s.next()
        if tok.kind == "num":
            return Polynomial.constant(self.variables, int(tok.text))
        if tok.kind == "ident":
            if tok.text == PARAMETER:
                self.used_parameter = True
                return Polynomial.constant(self.variables, RationalFunction.parameter())
            if tok.text not in self.variables:
                raise self.s.error(f"unknown variable {tok.text!r}", tok)
            return Polynomial.variable(self.variables, tok.text)
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expression()
            self.s.expect(")")
            return inner
        found = tok.text or "end of input"
        raise self.s.error(f"unexpected {found!r} in expression", tok)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` as a polynomial over ``variables`` (``t`` is the parameter)."""
    variables = tuple(variables)
    if PARAMETER in variables:
        raise ValueError(f"{PARAMETER!r} is reserved for the unfolding parameter")
    stream = TokenStream(tokenize(text))
    poly = ExpressionParser(stream, variables).parse_expression()
    if stream.peek.kind != "eof":
        raise stream.error(f"unexpected {stream.peek.text!r} after expression")
    return poly
