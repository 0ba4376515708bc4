"""A bijection between the naturals and closed expressions.

Index ``i`` picks the node kind ``i mod 13`` and decodes ``i // 13`` as the
payload through Cantor pairing.  Positive rationals come from the
Calkin-Wilf sequence, so every payload space is in bijection with the
naturals and the whole map is injective and onto.  Bodies under a binder
are decoded in "open" mode, where index 0 is the bound variable.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .nodes import (Add, Const, Deriv, Div, Expr, IntLit, Integral, MinOn, Mul, Neg, Pow, RatLit, Root,
                    Sub, Var)

KINDS = 13


def pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def unpair(z: int) -> tuple[int, int]:
    w = (math.isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def fusc(n: int) -> int:
    a, b = 1, 0
    while n:
        if n & 1:
            b += a
        else:
            a += b
        n >>= 1
    return b


def calkin_wilf(n: int) -> Fraction:
    """``n``-th positive rational, ``n >= 1`` (1, 1/2, 2, 1/3, 3/2, ...)."""
    return Fraction(fusc(n), fusc(n + 1))


def nonneg_rational(n: int) -> Fraction:
    return Fraction(0) if n == 0 else calkin_wilf(n)


def signed_rational(n: int) -> Fraction:
    if n == 0:
        return Fraction(0)
    q = calkin_wilf((n + 1) // 2)
    return q if n % 2 else -q


def nonzero_rational(n: int) -> Fraction:
    return signed_rational(n + 1)


def rational_list(n: int) -> list[Fraction]:
    out = []
    while n:
        head, n = unpair(n - 1)
        out.append(signed_rational(head))
    return out


def _decode(kind: int, r: int, open_: bool) -> Expr:
    sub = _open if open_ else _closed
    if kind == 0:
        return IntLit(r)
    if kind == 1:
        return RatLit(nonneg_rational(r))
    if kind in (2, 3, 4, 5):
        a, b = unpair(r)
        return (Add, Sub, Mul, Div)[kind - 2](sub(a), sub(b))
    if kind == 6:
        return Neg(sub(r))
    if kind == 7:
        a, n = unpair(r)
        return Pow(sub(a), n)
    if kind == 8:
        poly, bounds = unpair(r)
        rest, lead = unpair(poly)
        lo, hi = unpair(bounds)
        coeffs = rational_list(rest) + [nonzero_rational(lead)]
        return Root(tuple(coeffs), signed_rational(lo), signed_rational(hi))
    if kind == 9:
        if r == 0:
            return Const("e")
        if r == 1:
            return Const("pi")
        return Const("liouville", r)
    if kind == 10:
        body, at = unpair(r)
        return Deriv(_open(body), sub(at))
    if kind == 11:
        body, bounds = unpair(r)
        lo, hi = unpair(bounds)
        return Integral(_open(body), sub(lo), sub(hi))
    if kind == 12:
        body, bounds = unpair(r)
        lo, hi = unpair(bounds)
        return MinOn(_open(body), signed_rational(lo), signed_rational(hi))
    raise AssertionError(kind)


def _closed(i: int) -> Expr:
    return _decode(i % KINDS, i // KINDS, False)


def _open(i: int) -> Expr:
    if i == 0:
        return Var("x")
    i -= 1
    return _decode(i % KINDS, i // KINDS, True)


def enumerate_terms(i: int) -> Expr:
    """The ``i``-th closed expression."""
    if i < 0:
        raise ValueError("index must be a natural number")
    return _closed(i)
