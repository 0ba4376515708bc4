"""Constructors for algebraic roots and series constants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NoSignChange
from .levels import tick
from .real import FractalReal, Provenance, RationalLike, dyadic

E_LEVEL = 2
PI_LEVEL = 2
LIOUVILLE_LEVEL = 3
ALGEBRAIC_LEVEL = 1


@dataclass(frozen=True)
class RationalPolynomial:
    """Rational coefficients, lowest degree first; leading coefficient nonzero."""

    coefficients: tuple

    def __init__(self, coefficients: Sequence[RationalLike], allow_zero: bool = False):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            if not allow_zero:
                raise ValueError("the zero polynomial has no leading coefficient")
            coeffs = [Fraction(0)]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: RationalLike) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return " + ".join(terms)


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def poly_root(p: RationalPolynomial | Sequence[RationalLike], a: RationalLike, b: RationalLike,
              n: int = ALGEBRAIC_LEVEL) -> FractalReal:
    """The unique root of ``p`` in ``[a, b]`` by interval bisection.

    The caller certifies isolation; only the sign change is checked.
    """
    if not isinstance(p, RationalPolynomial):
        p = RationalPolynomial(p)
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("poly_root needs a < b")
    sa, sb = _sign(p(a)), _sign(p(b))
    if sa * sb >= 0:
        raise NoSignChange(f"p({a}) and p({b}) do not have strictly opposite signs")
    width = b - a
    degree = p.degree

    def bisect(k: int) -> Fraction:
        lo, hi = a, b
        m = 0
        while width * dyadic(m) >= dyadic(k):
            mid = (lo + hi) / 2
            tick(degree + 1)
            s = _sign(p(mid))
            if s == 0:
                return mid
            if s == sa:
                lo = mid
            else:
                hi = mid
            m += 1
        return (lo + hi) / 2

    bound = max(abs(a), abs(b)) + 1
    return FractalReal(bisect, n, bound, Provenance("algebraic", (p.coefficients, (a, b))))


def sqrt2(n: int = ALGEBRAIC_LEVEL) -> FractalReal:
    return poly_root([-2, 0, 1], 1, 2, n)


def golden_ratio(n: int = ALGEBRAIC_LEVEL) -> FractalReal:
    return poly_root([-1, -1, 1], 1, 2, n)


def _e_approximant(k: int) -> Fraction:
    # sum_{i<=m} 1/i! with remainder < 2/(m+1)!; kept as numerator/m!
    target = 1 << k
    m, fact, num = 0, 1, 1  # num / fact = sum_{i<=m} 1/i!
    while 2 * target >= fact * (m + 1):
        m += 1
        fact *= m
        num = num * m + 1
        tick()
    return Fraction(num, fact)


def e_constant(level: int = E_LEVEL) -> FractalReal:
    return FractalReal(_e_approximant, level, 3, Provenance("series", ("e",)))


def _arctan_inv(x: int, k: int) -> Fraction:
    """arctan(1/x) within ``2**-k``: alternating series, tail below the next term."""
    total = Fraction(0)
    i = 0
    while True:
        term = Fraction(1, (2 * i + 1) * x ** (2 * i + 1))
        if term < dyadic(k):
            return total
        total += term if i % 2 == 0 else -term
        tick()
        i += 1


def _pi_approximant(k: int) -> Fraction:
    # pi = 16 arctan(1/5) - 4 arctan(1/239); 16*2^-(k+6) + 4*2^-(k+4) < 2^-k
    return 16 * _arctan_inv(5, k + 6) - 4 * _arctan_inv(239, k + 4)


def pi_constant(level: int = PI_LEVEL) -> FractalReal:
    return FractalReal(_pi_approximant, level, 4, Provenance("series", ("pi",)))


def liouville(base: int = 10, level: int = LIOUVILLE_LEVEL) -> FractalReal:
    """``sum_{j>=1} base**-(j!)``; the tail after ``j = m`` is below ``2 base**-((m+1)!)``."""
    if base < 2:
        raise ValueError("Liouville base must be at least 2")

    def approximant(k: int) -> Fraction:
        total = Fraction(0)
        m, fact = 0, 1  # fact = (m+1)!
        while 2 * (1 << k) >= base ** fact:
            m += 1
            total += Fraction(1, base ** fact)
            fact *= m + 1
            tick()
        return total

    return FractalReal(approximant, level, 1, Provenance("series", (f"liouville({base})",)))


def named_constant(name: str, base: int | None = None) -> FractalReal:
    if name == "e":
        return e_constant()
    if name == "pi":
        return pi_constant()
    if name == "liouville":
        return liouville(10 if base is None else base)
    raise ValueError(f"unknown constant {name!r}")
