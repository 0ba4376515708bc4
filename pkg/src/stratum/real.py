"""Exact rationals and level-tagged fractal reals.

A :class:`FractalReal` is a total function ``k -> Fraction`` whose value at
``k`` lies strictly within ``2**-k`` of the ideal real, together with a
definability level, a static magnitude bound and a provenance tag.
"""

from __future__ import annotations

import enum
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ApartnessNotWitnessed
from .levels import current_meter, level_join, tick

Rational = Fraction
RationalLike = Union[Fraction, int]


def dyadic(k: int) -> Fraction:
    """``2**-k`` as an exact rational (``k`` may be negative)."""
    return Fraction(1, 1 << k) if k >= 0 else Fraction(1 << -k)


def ceil_log2(q: RationalLike) -> int:
    """Least integer ``s`` with ``2**s >= q`` (``q > 0``)."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("ceil_log2 needs a positive argument")
    s = q.numerator.bit_length() - q.denominator.bit_length()
    while dyadic(-s) < q:
        s += 1
    while dyadic(-(s - 1)) >= q:
        s -= 1
    return s


@dataclass(frozen=True)
class Provenance:
    kind: str  # rational | integer | algebraic | series | derived
    detail: tuple = ()

    def __str__(self):
        return f"{self.kind}{self.detail!r}" if self.detail else self.kind


class FractalReal:
    __slots__ = ("_approximant", "level", "magnitude_bound", "provenance", "_memo", "_lock", "exact")

    def __init__(self, approximant: Callable[[int], Fraction], level: int,
                 magnitude_bound: RationalLike, provenance: Provenance,
                 exact: Fraction | None = None):
        if not isinstance(level, int) or level < 0:
            raise ValueError(f"level must be a natural number, got {level!r}")
        self._approximant = approximant
        self.level = level
        self.magnitude_bound = Fraction(magnitude_bound)
        self.provenance = provenance
        # set only for constant sequences; lets callers skip approximation
        self.exact = exact
        self._memo: dict[int, Fraction] = {}
        self._lock = threading.Lock()

    def approx(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("precision index must be a natural number")
        if current_meter() is not None:
            tick()
            return self._approximant(k)
        memo = self._memo
        q = memo.get(k)
        if q is None:
            q = self._approximant(k)
            with self._lock:
                memo.setdefault(k, q)
        return q

    __call__ = approx

    def with_level(self, level: int) -> "FractalReal":
        """Same value and approximant, re-tagged at ``level``."""
        return FractalReal(self._approximant, level, self.magnitude_bound,
                           self.provenance, self.exact)

    def __repr__(self):
        return f"FractalReal(~{float(self.approx(20)):.9g}, level={self.level}, {self.provenance})"

    def __add__(self, other):
        return arith("add", self, _coerce(other, self.level))

    def __radd__(self, other):
        return arith("add", _coerce(other, self.level), self)

    def __sub__(self, other):
        return arith("sub", self, _coerce(other, self.level))

    def __rsub__(self, other):
        return arith("sub", _coerce(other, self.level), self)

    def __mul__(self, other):
        return arith("mul", self, _coerce(other, self.level))

    def __rmul__(self, other):
        return arith("mul", _coerce(other, self.level), self)

    def __neg__(self):
        return arith("neg", self)


def _coerce(v, level: int) -> FractalReal:
    if isinstance(v, FractalReal):
        return v
    if isinstance(v, (int, Fraction)):
        return embed_rational(Fraction(v), 0)
    return NotImplemented


def embed_rational(q: RationalLike, n: int = 0) -> FractalReal:
    q = Fraction(q)
    kind = "integer" if q.denominator == 1 else "rational"
    return FractalReal(lambda k: q, n, abs(q) + 1, Provenance(kind), exact=q)


def approx(x: FractalReal, k: int) -> Fraction:
    return x.approx(k)


def _shift_for(bound: Fraction) -> int:
    s = 0
    while (1 << s) < bound:
        s += 1
    return s


def arith(op: str, x: FractalReal, y: FractalReal | None = None) -> FractalReal:
    """Field operation on fractal reals; level is the join of the inputs."""
    if op == "neg":
        fx = x.approx
        def neg(k):
            tick()
            return -fx(k)
        return FractalReal(neg, x.level, x.magnitude_bound, Provenance("derived", ("neg",)))
    if y is None:
        raise TypeError(f"{op} needs two operands")
    fx, fy = x.approx, y.approx
    level = level_join(x.level, y.level)
    if op == "add":
        def add(k):
            tick()
            return fx(k + 1) + fy(k + 1)
        return FractalReal(add, level, x.magnitude_bound + y.magnitude_bound, Provenance("derived", ("add",)))
    if op == "sub":
        def sub(k):
            tick()
            return fx(k + 1) - fy(k + 1)
        return FractalReal(sub, level, x.magnitude_bound + y.magnitude_bound, Provenance("derived", ("sub",)))
    if op == "mul":
        s = _shift_for(x.magnitude_bound + y.magnitude_bound + 1)
        def mul(k):
            tick()
            return fx(k + s) * fy(k + s)
        return FractalReal(mul, level, x.magnitude_bound * y.magnitude_bound, Provenance("derived", ("mul",)))
    raise ValueError(f"unknown operation {op!r}")


def invert(x: FractalReal, apartness_k: int) -> FractalReal:
    """``1/x`` given a precision at which ``x`` is certified apart from zero.

    With ``|x(a)| > 2 * 2**-a`` we get ``|x| > 2**-a`` and every later
    approximant ``q`` satisfies ``|q| > (3/4) 2**-a``, so evaluating at
    ``k + 2a + 2`` keeps ``|1/x - 1/q| < 2**-k / 3``.
    """
    a = apartness_k
    qa = x.approx(a)
    if abs(qa) <= 2 * dyadic(a):
        raise ApartnessNotWitnessed(a)
    fx = x.approx
    shift = 2 * a + 2
    def inv(k):
        tick()
        return 1 / fx(k + shift)
    bound = 1 / (abs(qa) - dyadic(a))
    return FractalReal(inv, x.level, bound, Provenance("derived", ("inv",)))


def find_apartness(x: FractalReal, k_max: int) -> int:
    """Least ``k <= k_max`` witnessing ``x`` apart from zero."""
    for k in range(k_max + 1):
        if abs(x.approx(k)) > 2 * dyadic(k):
            return k
    raise ApartnessNotWitnessed(k_max)


def divide(x: FractalReal, y: FractalReal, k_max: int = 64) -> FractalReal:
    return arith("mul", x, invert(y, find_apartness(y, k_max)))


class Ordering(enum.Enum):
    LESS = "Less"
    GREATER = "Greater"
    INDISTINGUISHABLE = "Indistinguishable"

    def __str__(self):
        return self.value


def compare_at(x: FractalReal, y: FractalReal, k: int) -> Ordering:
    qx, qy, eps = x.approx(k), y.approx(k), dyadic(k)
    if qx + eps < qy - eps:
        return Ordering.LESS
    if qy + eps < qx - eps:
        return Ordering.GREATER
    return Ordering.INDISTINGUISHABLE


def deciding_precision(x: FractalReal, y: FractalReal, k_max: int) -> tuple[int, Ordering] | None:
    """Least precision at which ``x`` and ``y`` compare as Less or Greater."""
    for k in range(k_max + 1):
        order = compare_at(x, y, k)
        if order is not Ordering.INDISTINGUISHABLE:
            return k, order
    return None
