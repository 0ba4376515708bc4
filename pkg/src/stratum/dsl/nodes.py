"""Expression tree of the definability language and its canonical printer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


@dataclass(frozen=True)
class IntLit:
    value: int

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("integer literals are non-negative (use Neg)")


@dataclass(frozen=True)
class RatLit:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        if self.value < 0:
            raise ValueError("rational literals are non-negative (use Neg)")


@dataclass(frozen=True)
class Var:
    name: str = "x"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int

    def __post_init__(self):
        if self.exponent < 0:
            raise ValueError("exponents are natural numbers")


@dataclass(frozen=True)
class Root:
    """The root of ``sum coeffs[j] x**j`` isolated in ``[lo, hi]``."""

    coeffs: tuple
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs or cs[-1] == 0:
            raise ValueError("root needs a nonzero polynomial with nonzero leading coefficient")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))


@dataclass(frozen=True)
class Const:
    name: str  # e | pi | liouville
    base: int | None = None

    def __post_init__(self):
        if self.name in ("e", "pi"):
            if self.base is not None:
                raise ValueError(f"{self.name} takes no base")
        elif self.name == "liouville":
            if self.base is None or self.base < 2:
                raise ValueError("liouville base must be at least 2")
        else:
            raise ValueError(f"unknown constant {self.name!r}")


@dataclass(frozen=True)
class Deriv:
    body: "Expr"
    at: "Expr"


@dataclass(frozen=True)
class Integral:
    body: "Expr"
    lo: "Expr"
    hi: "Expr"


@dataclass(frozen=True)
class MinOn:
    body: "Expr"
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))


Expr = Union[IntLit, RatLit, Var, Add, Sub, Mul, Div, Neg, Pow, Root, Const, Deriv, Integral, MinOn]

BINARY = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _bound(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else _rat(q)


def _poly(coeffs: tuple) -> str:
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        lit = _rat(abs(c))
        lit = f"(-{lit})" if c < 0 else f"({lit})"
        terms.append(lit if j == 0 else f"{lit}*x^{j}")
    return " + ".join(terms)


def to_text(e: Expr) -> str:
    """Fully parenthesised rendering; ``parse(to_text(e)) == e``."""
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, RatLit):
        return _rat(e.value)
    if isinstance(e, Var):
        return e.name
    op = BINARY.get(type(e))
    if op is not None:
        right = to_text(e.right)
        if op == "/" and isinstance(e.right, (IntLit, RatLit)):
            right = f"({right})"  # keep "a / b" from reading back as one rational literal
        return f"({to_text(e.left)} {op} {right})"
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, Pow):
        return f"({to_text(e.base)})^{e.exponent}"
    if isinstance(e, Root):
        return f"root({_poly(e.coeffs)}; {_bound(e.lo)}, {_bound(e.hi)})"
    if isinstance(e, Const):
        return f"liouville({e.base})" if e.name == "liouville" else e.name
    if isinstance(e, Deriv):
        return f"deriv({to_text(e.body)}; at {to_text(e.at)})"
    if isinstance(e, Integral):
        return f"integral({to_text(e.body)}; {to_text(e.lo)}, {to_text(e.hi)})"
    if isinstance(e, MinOn):
        return f"min({to_text(e.body)}; {_bound(e.lo)}, {_bound(e.hi)})"
    raise TypeError(f"not an expression: {e!r}")


def children(e: Expr) -> list[tuple[Expr, bool]]:
    """Sub-expressions with a flag telling whether ``x`` is rebound there."""
    if isinstance(e, (Add, Sub, Mul, Div)):
        return [(e.left, False), (e.right, False)]
    if isinstance(e, Neg):
        return [(e.operand, False)]
    if isinstance(e, Pow):
        return [(e.base, False)]
    if isinstance(e, Deriv):
        return [(e.body, True), (e.at, False)]
    if isinstance(e, Integral):
        return [(e.body, True), (e.lo, False), (e.hi, False)]
    if isinstance(e, MinOn):
        return [(e.body, True)]
    return []


def has_free_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    return any(has_free_var(c) for c, rebinds in children(e) if not rebinds)
