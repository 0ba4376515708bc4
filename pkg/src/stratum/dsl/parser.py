"""Recursive-descent parser for the expression language.

Precedence, loosest first: ``+ -``, ``* /``, unary minus, ``^``.  An
integer immediately followed by ``/`` and a digit string is a single
rational literal, so ``1/3`` is ``RatLit(1/3)`` while ``1/(3)`` divides.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import ParseError
from .nodes import (Add, Const, Deriv, Div, Expr, IntLit, Integral, MinOn, Mul, Neg, Pow, RatLit, Root,
                    Sub, Var, has_free_var)

TOKEN = re.compile(r"(\d+)|([A-Za-z_]+)|(.)", re.S)
KEYWORDS = {"e", "pi", "liouville", "x", "root", "deriv", "at", "integral", "min"}


@dataclass(frozen=True)
class Token:
    kind: str  # num | word | sym | end
    text: str
    pos: int  # 1-based


def tokenize(text: str) -> list[Token]:
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        raise ParseError(bad + 1, "ASCII input")
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = TOKEN.match(text, i)
        num, word, sym = m.groups()
        start = i + 1
        if num is not None:
            out.append(Token("num", num, start))
        elif word is not None:
            if word not in KEYWORDS:
                raise ParseError(start, "operand", f"unknown name {word!r}")
            out.append(Token("word", word, start))
        else:
            out.append(Token("sym", sym, start))
        i = m.end()
    out.append(Token("end", "", len(text) + 1))
    return out


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, n: int = 1) -> Token:
        return self.tokens[min(self.i + n, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "word") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(self.tok.pos, f"'{text}'")
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, "operator or end of input")
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            right = self.unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.factor()

    def factor(self) -> Expr:
        base = self.base()
        if self.at("^"):
            self.advance()
            return Pow(base, self.natural())
        return base

    def natural(self) -> int:
        if self.tok.kind != "num":
            raise ParseError(self.tok.pos, "natural number")
        return int(self.advance().text)

    def unsigned_rational(self) -> Fraction:
        """``int ('/' posint)?``"""
        n = self.natural()
        if self.at("/") and self.peek().kind == "num":
            self.advance()
            pos = self.tok.pos
            d = self.natural()
            if d == 0:
                raise ParseError(pos, "positive integer")
            return Fraction(n, d)
        return Fraction(n)

    def signed_rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        if self.tok.kind != "num":
            raise ParseError(self.tok.pos, "rational number")
        return sign * self.unsigned_rational()

    def base(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            n = int(self.advance().text)
            if self.at("/") and self.peek().kind == "num":
                self.advance()
                pos = self.tok.pos
                d = self.natural()
                if d == 0:
                    raise ParseError(pos, "positive integer")
                return RatLit(Fraction(n, d))
            return IntLit(n)
        if t.kind == "sym" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "word":
            return self.keyword()
        raise ParseError(t.pos, "operand")

    def keyword(self) -> Expr:
        t = self.advance()
        w = t.text
        if w == "x":
            return Var("x")
        if w in ("e", "pi"):
            return Const(w)
        if w == "liouville":
            self.expect("(")
            pos = self.tok.pos
            b = self.natural()
            if b < 2:
                raise ParseError(pos, "base of at least 2")
            self.expect(")")
            return Const("liouville", b)
        if w == "root":
            self.expect("(")
            pos = self.tok.pos
            poly = self.expr()
            self.expect(";")
            lo = self.signed_rational()
            self.expect(",")
            hi = self.signed_rational()
            self.expect(")")
            return Root(_rational_poly(poly, pos), lo, hi)
        if w == "deriv":
            self.expect("(")
            body = self.expr()
            self.expect(";")
            self.expect("at")
            at = self.expr()
            self.expect(")")
            return Deriv(body, at)
        if w == "integral":
            self.expect("(")
            body = self.expr()
            self.expect(";")
            lo = self.expr()
            self.expect(",")
            hi = self.expr()
            self.expect(")")
            return Integral(body, lo, hi)
        if w == "min":
            self.expect("(")
            body = self.expr()
            self.expect(";")
            lo = self.signed_rational()
            self.expect(",")
            hi = self.signed_rational()
            self.expect(")")
            return MinOn(body, lo, hi)
        raise ParseError(t.pos, "operand")


def _poly_add(p, q):
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _rational_poly(e: Expr, pos: int) -> tuple:
    """Expand a polynomial in ``x`` with rational literal coefficients."""

    def go(e: Expr) -> list[Fraction]:
        if isinstance(e, IntLit):
            return [Fraction(e.value)]
        if isinstance(e, RatLit):
            return [e.value]
        if isinstance(e, Var):
            return [Fraction(0), Fraction(1)]
        if isinstance(e, Add):
            return _poly_add(go(e.left), go(e.right))
        if isinstance(e, Sub):
            return _poly_add(go(e.left), [-c for c in go(e.right)])
        if isinstance(e, Neg):
            return [-c for c in go(e.operand)]
        if isinstance(e, Mul):
            return _poly_mul(go(e.left), go(e.right))
        if isinstance(e, Div):
            d = go(e.right)
            if has_free_var(e.right) or len(d) != 1 or d[0] == 0:
                raise ParseError(pos, "polynomial with rational coefficients", "bad divisor")
            return [c / d[0] for c in go(e.left)]
        if isinstance(e, Pow):
            out = [Fraction(1)]
            b = go(e.base)
            for _ in range(e.exponent):
                out = _poly_mul(out, b)
            return out
        raise ParseError(pos, "polynomial with rational coefficients")

    coeffs = go(e)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        raise ParseError(pos, "nonzero polynomial")
    return tuple(coeffs)


def parse(text: str) -> Expr:
    return Parser(text).parse()
