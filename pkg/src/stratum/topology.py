"""Open sets as interval enumerations, compact intervals, minima and measure.

Semi-decidable questions take explicit fuel and answer :class:`Unknown`
when it runs out.  Cover checks are exact sweeps in rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .analysis import EffectiveFunction, partition_count
from .errors import DomainViolation, NotSeparated
from .levels import tick
from .real import FractalReal, Ordering, Provenance, RationalLike, deciding_precision, dyadic, embed_rational

Interval = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Found:
    index: int


@dataclass(frozen=True)
class Unknown:
    """Fuel ran out; not a negative answer."""


@dataclass(frozen=True)
class Cover:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Covers:
    total_length: Fraction


@dataclass(frozen=True)
class DoesNotCover:
    pass


@dataclass(frozen=True)
class PointSet:
    points: tuple[Fraction, ...]

    def __init__(self, points: Sequence[RationalLike]):
        object.__setattr__(self, "points", tuple(Fraction(p) for p in points))


@dataclass(frozen=True)
class ClosedInterval:
    lo: Fraction
    hi: Fraction

    def __init__(self, lo: RationalLike, hi: RationalLike):
        object.__setattr__(self, "lo", Fraction(lo))
        object.__setattr__(self, "hi", Fraction(hi))


class OpenSetEnum:
    """``U = union over k of (a_k, b_k)`` from a pure enumerator."""

    def __init__(self, enumerator: Callable[[int], tuple[RationalLike, RationalLike]], level: int = 0):
        self._enumerator = enumerator
        self.level = level

    def interval(self, k: int) -> Interval:
        a, b = self._enumerator(k)
        a, b = Fraction(a), Fraction(b)
        if not a < b:
            raise ValueError(f"enumerated interval {k} is empty: ({a}, {b})")
        return a, b

    @classmethod
    def from_list(cls, intervals: Sequence[tuple[RationalLike, RationalLike]], level: int = 0) -> "OpenSetEnum":
        """Finite enumeration, padded by repeating the last interval."""
        items = list(intervals)
        if not items:
            raise ValueError("need at least one interval")
        return cls(lambda k: items[min(k, len(items) - 1)], level)


@dataclass(frozen=True)
class CompactInterval:
    lo: Fraction
    hi: Fraction
    level: int = 0

    def __init__(self, lo: RationalLike, hi: RationalLike, level: int = 0):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("CompactInterval needs lo <= hi")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "level", level)


def member_semi(U: OpenSetEnum, x: FractalReal, fuel: int) -> Found | Unknown:
    """Dovetail precision against index: at stage ``s`` use precision ``s``
    and try every index up to ``s`` (never beyond ``fuel - 1``)."""
    for s in range(fuel):
        q, r = x.approx(s), dyadic(s)
        for k in range(min(s + 1, fuel)):
            tick()
            a, b = U.interval(k)
            if a <= q - r and q + r <= b:
                return Found(k)
    return Unknown()


def epsilon_net(K: CompactInterval, delta: RationalLike) -> list[Fraction]:
    delta = Fraction(delta)
    if delta <= 0:
        raise ValueError("net spacing must be positive")
    count = math.ceil((K.hi - K.lo) / delta) + 1
    return [min(K.lo + i * delta, K.hi) for i in range(count)]


def _sweep(lo: Fraction, hi: Fraction, intervals: Sequence[tuple[int, Interval]]) -> list[int] | None:
    """Greedy cover of ``[lo, hi]``: each uncovered point must sit strictly inside."""
    chosen: list[int] = []
    point = lo
    while True:
        best = None
        for idx, (a, b) in intervals:
            if a < point < b and (best is None or b > best[1]):
                best = (idx, b)
        if best is None:
            return None
        chosen.append(best[0])
        point = best[1]
        if point > hi:
            return chosen


def finite_subcover(K: CompactInterval, U: OpenSetEnum, fuel: int) -> Cover | Unknown:
    intervals = [(k, U.interval(k)) for k in range(fuel)]
    tick(fuel)
    chosen = _sweep(K.lo, K.hi, intervals)
    if chosen is None:
        return Unknown()
    return Cover(tuple(sorted(set(chosen))))


def effective_min(K: CompactInterval, F: EffectiveFunction, k: int) -> tuple[FractalReal, FractalReal]:
    """``(xstar, val)`` with ``val`` the certified minimum of ``F`` on ``K``.

    At precision ``j`` the domain is sampled with mesh ``F.modulus(2**-(j+1))``
    and values are read to ``2**-(j+2)``, so the sampled minimum lies in
    ``(inf - 2**-(j+2), inf + 3 * 2**-(j+2))``.
    """
    lo, hi = F.domain
    if K.lo < lo or K.hi > hi:
        raise DomainViolation(f"[{K.lo}, {K.hi}] is not inside [{lo}, {hi}]")
    level = max(F.level, K.level)

    def sampled(j: int) -> tuple[Fraction, Fraction]:
        m = partition_count(K.hi - K.lo, F.modulus(dyadic(j + 1)))
        p = j + 2
        zs = F.grid_values(K.lo, K.hi, m, p)
        i = min(range(len(zs)), key=zs.__getitem__)
        return K.lo + (K.hi - K.lo) * i / m, Fraction(zs[i], 1 << p)

    def approximant(j: int) -> Fraction:
        return sampled(j)[1]

    point = sampled(k)[0]
    val = FractalReal(approximant, level, F.sup_bound, Provenance("derived", ("min",)))
    return embed_rational(point, level), val


def separate(x: FractalReal, y: FractalReal, k_hint: int) -> tuple[Interval, Interval]:
    """Disjoint rational intervals around ``x`` and ``y``."""
    found = deciding_precision(x, y, k_hint)
    if found is None:
        raise NotSeparated(f"x and y are indistinguishable up to precision {k_hint}")
    k, order = found
    r = dyadic(k)
    qx, qy = x.approx(k), y.approx(k)
    ix, iy = (qx - r, qx + r), (qy - r, qy + r)
    assert (order is Ordering.LESS and ix[1] < iy[0]) or (order is Ordering.GREATER and iy[1] < ix[0])
    return ix, iy


def _inside_some(p: Fraction, cover: Sequence[Interval]) -> bool:
    return any(a < p < b for a, b in cover)


def outer_measure_upper(cover: Sequence[tuple[RationalLike, RationalLike]],
                        target: Union[PointSet, ClosedInterval]) -> Covers | DoesNotCover:
    """Total cover length if ``cover`` contains ``target`` (exact check)."""
    ivs = [(Fraction(a), Fraction(b)) for a, b in cover]
    for a, b in ivs:
        if not a < b:
            raise ValueError(f"cover interval ({a}, {b}) is empty")
    if isinstance(target, PointSet):
        ok = all(_inside_some(p, ivs) for p in target.points)
    elif isinstance(target, ClosedInterval):
        ok = _sweep(target.lo, target.hi, list(enumerate(ivs))) is not None
    else:
        raise TypeError("target must be a PointSet or ClosedInterval")
    if not ok:
        return DoesNotCover()
    return Covers(sum((b - a for a, b in ivs), Fraction(0)))


def canonical_point_cover(points: Sequence[RationalLike], eps: RationalLike) -> list[Interval]:
    """One interval of length ``eps/m`` centred on each of the ``m`` distinct points."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    distinct = sorted({Fraction(p) for p in points})
    if not distinct:
        return []
    half = eps / (2 * len(distinct))
    return [(p - half, p + half) for p in distinct]
