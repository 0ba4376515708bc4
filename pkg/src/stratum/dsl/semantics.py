"""Level inference, evaluation, differentiation, classification and gap certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .. import analysis
from ..constants import ALGEBRAIC_LEVEL, E_LEVEL, LIOUVILLE_LEVEL, PI_LEVEL, named_constant, poly_root
from ..errors import ApartnessNotWitnessed, DomainViolation, OpenExpression, UnsupportedNode
from ..real import FractalReal, Ordering, ceil_log2, compare_at, divide, dyadic, embed_rational, find_apartness, invert
from ..topology import CompactInterval, effective_min
from .nodes import (Add, Const, Deriv, Div, Expr, IntLit, Integral, MinOn, Mul, Neg, Pow, RatLit, Root,
                    Sub, Var, children, has_free_var)
from .parser import parse

DEFAULT_APARTNESS_BOUND = 64
MIN_PRECISION = 12


def _as_expr(e: Union[Expr, str]) -> Expr:
    return parse(e) if isinstance(e, str) else e


# ---------------------------------------------------------------- levels

def _level(e: Expr, bound: bool) -> int:
    if isinstance(e, Var):
        if not bound:
            raise OpenExpression("x occurs outside any binder")
        return 0
    if isinstance(e, (IntLit, RatLit)):
        return 0
    if isinstance(e, Root):
        return ALGEBRAIC_LEVEL
    if isinstance(e, Const):
        return {"e": E_LEVEL, "pi": PI_LEVEL, "liouville": LIOUVILLE_LEVEL}[e.name]
    parts = [_level(c, bound or rebinds) for c, rebinds in children(e)]
    top = max(parts, default=0)
    if isinstance(e, (Deriv, Integral, MinOn)):
        return top + 1
    return top


def infer_level(e: Union[Expr, str]) -> int:
    """Syntactic definability level of a closed expression."""
    return _level(_as_expr(e), False)


# ---------------------------------------------------------------- polynomial expansion

Coefficient = Union[Fraction, FractalReal]


def _scalar(v: FractalReal) -> Coefficient:
    return v.exact if v.exact is not None else v


def _padd(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        a = p[i] if i < len(p) else None
        b = q[i] if i < len(q) else None
        out.append(b if a is None else a if b is None else a + b)
    return out


def _pscale(p, c):
    return [a * c for a in p]


def _pmul(p, q):
    out: list = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if isinstance(a, Fraction) and a == 0:
            continue
        for j, b in enumerate(q):
            if isinstance(b, Fraction) and b == 0:
                continue
            out[i + j] = out[i + j] + a * b
    return out


def _ppow(p, n):
    out = [Fraction(1)]
    for _ in range(n):
        out = _pmul(out, p)
    return out


def _pcompose(p, q):
    out = [Fraction(0)]
    for c in reversed(p):
        out = _padd(_pmul(out, q), [c])
    return out


def _pderiv(p):
    return [c * j for j, c in enumerate(p)][1:] or [Fraction(0)]


def _pantideriv(p):
    return [Fraction(0)] + [c * Fraction(1, j + 1) for j, c in enumerate(p)]


class Evaluator:
    def __init__(self, apartness_bound: int = DEFAULT_APARTNESS_BOUND, min_precision: int = MIN_PRECISION):
        self.apartness_bound = apartness_bound
        self.min_precision = min_precision

    def expand(self, e: Expr) -> list[Coefficient]:
        """Coefficients in ``x`` of a polynomial-fragment body."""
        if not has_free_var(e):
            return [_scalar(self.value(e))]
        if isinstance(e, Var):
            return [Fraction(0), Fraction(1)]
        if isinstance(e, Add):
            return _padd(self.expand(e.left), self.expand(e.right))
        if isinstance(e, Sub):
            return _padd(self.expand(e.left), _pscale(self.expand(e.right), -1))
        if isinstance(e, Neg):
            return _pscale(self.expand(e.operand), -1)
        if isinstance(e, Mul):
            return _pmul(self.expand(e.left), self.expand(e.right))
        if isinstance(e, Pow):
            return _ppow(self.expand(e.base), e.exponent)
        if isinstance(e, Div):
            if has_free_var(e.right):
                raise UnsupportedNode("division by an expression in x")
            return _pscale(self.expand(e.left), self.reciprocal(self.value(e.right)))
        if isinstance(e, Deriv):
            return _pcompose(_pderiv(self.expand(e.body)), self.expand(e.at))
        if isinstance(e, Integral):
            q = _pantideriv(self.expand(e.body))
            return _padd(_pcompose(q, self.expand(e.hi)), _pscale(_pcompose(q, self.expand(e.lo)), -1))
        raise UnsupportedNode(f"cannot expand {type(e).__name__}")

    def reciprocal(self, v: FractalReal) -> Coefficient:
        if v.exact is not None:
            if v.exact == 0:
                raise ApartnessNotWitnessed(self.apartness_bound)
            return 1 / v.exact
        return invert(v, find_apartness(v, self.apartness_bound))

    def function(self, body: Expr, lo: Fraction, hi: Fraction) -> analysis.PolynomialFunction:
        return analysis.PolynomialFunction(self.expand(body), (lo, hi), body=body)

    @staticmethod
    def _hull(*points: FractalReal) -> tuple[Fraction, Fraction]:
        approx = [p.approx(0) for p in points]
        return Fraction(math.floor(min(approx)) - 2), Fraction(math.ceil(max(approx)) + 2)

    def value(self, e: Expr) -> FractalReal:
        if isinstance(e, IntLit):
            return embed_rational(e.value)
        if isinstance(e, RatLit):
            return embed_rational(e.value)
        if isinstance(e, Var):
            raise OpenExpression("x occurs outside any binder")
        if isinstance(e, Const):
            return named_constant(e.name, e.base)
        if isinstance(e, Root):
            return poly_root(e.coeffs, e.lo, e.hi, ALGEBRAIC_LEVEL)
        if isinstance(e, Neg):
            v = self.value(e.operand)
            return embed_rational(-v.exact, v.level) if v.exact is not None else -v
        if isinstance(e, (Add, Sub, Mul)):
            a, b = self.value(e.left), self.value(e.right)
            if a.exact is not None and b.exact is not None:
                q = a.exact + b.exact if isinstance(e, Add) else \
                    a.exact - b.exact if isinstance(e, Sub) else a.exact * b.exact
                return embed_rational(q, max(a.level, b.level))
            return a + b if isinstance(e, Add) else a - b if isinstance(e, Sub) else a * b
        if isinstance(e, Div):
            a, b = self.value(e.left), self.value(e.right)
            if b.exact is not None:
                if b.exact == 0:
                    raise ApartnessNotWitnessed(self.apartness_bound)
                if a.exact is not None:
                    return embed_rational(a.exact / b.exact, max(a.level, b.level))
            return divide(a, b, self.apartness_bound)
        if isinstance(e, Pow):
            b = self.value(e.base)
            if b.exact is not None:
                return embed_rational(b.exact ** e.exponent, b.level)
            out = None
            for _ in range(e.exponent):
                out = b if out is None else out * b
            return out if out is not None else embed_rational(1, b.level)
        level = _level(e, False)
        if isinstance(e, Deriv):
            at = self.value(e.at)
            lo, hi = self._hull(at)
            return analysis.differentiate(self.function(e.body, lo, hi), at).with_level(level)
        if isinstance(e, Integral):
            return self._integral(e).with_level(level)
        if isinstance(e, MinOn):
            if e.lo > e.hi:
                raise DomainViolation(f"empty interval [{e.lo}, {e.hi}]")
            F = self.function(e.body, e.lo, e.hi)
            _, val = effective_min(CompactInterval(e.lo, e.hi), F, self.min_precision)
            return val.with_level(level)
        raise TypeError(f"not an expression: {e!r}")

    def _integral(self, e: Integral) -> FractalReal:
        lo, hi = self.value(e.lo), self.value(e.hi)
        if lo.exact is not None and hi.exact is not None:
            a, b = lo.exact, hi.exact
            if a <= b:
                return analysis.integrate(self.function(e.body, a, b), a, b)
            return -analysis.integrate(self.function(e.body, b, a), b, a)
        # irrational bounds: difference of an antiderivative anchored at a rational point
        dlo, dhi = self._hull(lo, hi)
        F = self.function(e.body, dlo, dhi)
        G = analysis.antiderivative(F, dlo)
        return analysis.eval_fn(G, hi) - analysis.eval_fn(G, lo)


def eval_expr(e: Union[Expr, str], apartness_bound: int = DEFAULT_APARTNESS_BOUND) -> FractalReal:
    """Value of a closed expression, tagged with its inferred level."""
    e = _as_expr(e)
    level = infer_level(e)
    v = Evaluator(apartness_bound).value(e)
    return v if v.level == level else v.with_level(level)


# ---------------------------------------------------------------- symbolic differentiation

ZERO, ONE = IntLit(0), IntLit(1)


def _is_lit(e: Expr, n: int) -> bool:
    return isinstance(e, IntLit) and e.value == n


def simplify_step(e: Expr) -> Expr:
    if isinstance(e, Add):
        if _is_lit(e.left, 0):
            return e.right
        if _is_lit(e.right, 0):
            return e.left
    if isinstance(e, Sub):
        if _is_lit(e.right, 0):
            return e.left
        if _is_lit(e.left, 0):
            return simplify_step(Neg(e.right))
    if isinstance(e, Mul):
        if _is_lit(e.left, 0) or _is_lit(e.right, 0):
            return ZERO
        if _is_lit(e.left, 1):
            return e.right
        if _is_lit(e.right, 1):
            return e.left
        if isinstance(e.left, IntLit) and isinstance(e.right, IntLit):
            return IntLit(e.left.value * e.right.value)
    if isinstance(e, Neg) and _is_lit(e.operand, 0):
        return ZERO
    if isinstance(e, Pow):
        if e.exponent == 0:
            return ONE
        if e.exponent == 1:
            return e.base
    return e


def symbolic_diff(body: Union[Expr, str], var: str = "x") -> Expr:
    """Derivative of a polynomial-fragment body; closed parts are constants."""
    body = _as_expr(body)
    if var != "x":
        raise ValueError("the language has the single variable x")

    def d(e: Expr) -> Expr:
        if not has_free_var(e):
            return ZERO
        if isinstance(e, Var):
            return ONE
        if isinstance(e, Add):
            return simplify_step(Add(d(e.left), d(e.right)))
        if isinstance(e, Sub):
            return simplify_step(Sub(d(e.left), d(e.right)))
        if isinstance(e, Neg):
            return simplify_step(Neg(d(e.operand)))
        if isinstance(e, Mul):
            return simplify_step(Add(simplify_step(Mul(d(e.left), e.right)),
                                     simplify_step(Mul(e.left, d(e.right)))))
        if isinstance(e, Pow):
            n = e.exponent
            lead = simplify_step(Mul(IntLit(n), simplify_step(Pow(e.base, n - 1))))
            return simplify_step(Mul(lead, d(e.base)))
        raise UnsupportedNode(f"{type(e).__name__} in a differentiated body; use the numeric path")

    return d(body)


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class RationalClass:
    value: Fraction | None = None

    def __str__(self):
        return "Rational"


@dataclass(frozen=True)
class Algebraic:
    level: int

    def __str__(self):
        return f"Algebraic({self.level})"


@dataclass(frozen=True)
class Transcendental:
    level: int

    def __str__(self):
        return f"Transcendental({self.level})"


@dataclass(frozen=True)
class UnknownClass:
    level: int

    def __str__(self):
        return f"Unknown({self.level})"


NumberClass = Union[RationalClass, Algebraic, Transcendental, UnknownClass]


def _rational_op(e: Expr, a: Fraction | None, b: Fraction | None) -> Fraction | None:
    if a is None or b is None:
        return None
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    return a / b if b != 0 else None


def _classify(e: Expr) -> NumberClass:
    if isinstance(e, IntLit):
        return RationalClass(Fraction(e.value))
    if isinstance(e, RatLit):
        return RationalClass(e.value)
    if isinstance(e, Root):
        return Algebraic(ALGEBRAIC_LEVEL)
    if isinstance(e, Const):
        return Transcendental(_level(e, False))
    if isinstance(e, Neg):
        c = _classify(e.operand)
        if isinstance(c, RationalClass) and c.value is not None:
            return RationalClass(-c.value)
        return c
    if isinstance(e, Pow):
        c = _classify(e.base)
        if e.exponent == 0:
            return RationalClass(Fraction(1))
        if isinstance(c, RationalClass):
            return RationalClass(None if c.value is None else c.value ** e.exponent)
        if isinstance(c, Algebraic) and e.exponent >= 2:
            return Algebraic(c.level + 1)
        return c
    if isinstance(e, (Add, Sub, Mul, Div)):
        a, b = _classify(e.left), _classify(e.right)
        level = _level(e, False)
        if isinstance(a, RationalClass) and isinstance(b, RationalClass):
            return RationalClass(_rational_op(e, a.value, b.value))
        if isinstance(a, RationalClass) or isinstance(b, RationalClass):
            q, other = (a, b) if isinstance(a, RationalClass) else (b, a)
            if q.value == 0:
                if isinstance(e, Mul) or (isinstance(e, Div) and q is a):
                    return RationalClass(Fraction(0))
                if isinstance(e, Div):
                    return UnknownClass(level)  # division by zero never evaluates
            if isinstance(other, (Algebraic, Transcendental)):
                return other
            return UnknownClass(level)
        if isinstance(a, Algebraic) and isinstance(b, Algebraic):
            return Algebraic(max(a.level, b.level) + 1)
        return UnknownClass(level)
    # binders: the syntactic classifier does not look inside
    return UnknownClass(_level(e, False))


def classify(e: Union[Expr, str]) -> NumberClass:
    """Provenance-based number class of a closed expression."""
    e = _as_expr(e)
    _level(e, False)
    return _classify(e)


# ---------------------------------------------------------------- gap certificates

@dataclass(frozen=True)
class GapCertificate:
    witness_point: Fraction
    delta: Fraction
    level: int


@dataclass(frozen=True)
class NoGapFound:
    pass


def gap_certificate(body: Union[Expr, str], lo, hi, x0, k: int,
                    apartness_bound: int = DEFAULT_APARTNESS_BOUND) -> GapCertificate | NoGapFound:
    """Certify that ``x0`` is suboptimal: ``f(y*) + delta <= f(x0)`` for a net point ``y*``.

    ``y*`` is the sampled minimiser at precision ``k``; ``delta`` is the
    largest power of two below the observed gap minus ``4 * 2**-k``, checked
    with :func:`compare_at` at precision ``k`` (halved until it passes).
    """
    body = _as_expr(body)
    lo, hi, x0 = Fraction(lo), Fraction(hi), Fraction(x0)
    if not lo <= x0 <= hi:
        raise DomainViolation(f"x0 = {x0} is outside [{lo}, {hi}]")
    level = _level(body, True) + 1
    F = Evaluator(apartness_bound).function(body, lo, hi)
    ystar, _ = effective_min(CompactInterval(lo, hi), F, k)
    y = ystar.exact
    fy, fx = F.rational_eval(y), F.rational_eval(x0)
    margin = fx.approx(k) - fy.approx(k) - 4 * dyadic(k)
    if margin <= 0:
        return NoGapFound()
    s = ceil_log2(margin)
    j = -s if dyadic(-s) == margin else 1 - s  # largest 2**-j <= margin
    while j <= 2 * k + 8:
        delta = dyadic(j)
        if compare_at(fy + embed_rational(delta), fx, k) is Ordering.LESS:
            return GapCertificate(y, delta, level)
        j += 1
    return NoGapFound()
