"""Definability levels, per-level fuel budgets and metered evaluation.

A level is a plain natural number.  Its operational meaning is a step
allowance ``c_n * k**e_n`` for producing a precision-``k`` approximation.
Steps are counted through a context-local :class:`StepMeter`; code that
does rational work calls :func:`tick`.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import BudgetExceededError

DEFAULT_EXPONENTS = {0: 2, 1: 5, 2: 8, 3: 12}


def _check_level(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"level must be a natural number, got {n!r}")
    return n


def level_join(m: int, n: int) -> int:
    return max(_check_level(m), _check_level(n))


def level_lift(n: int) -> int:
    return _check_level(n) + 1


@dataclass(frozen=True)
class FuelBudget:
    """Per-level rule ``n -> (constant, exponent)``.

    Levels missing from ``rules`` extrapolate from the highest configured
    level, ``step`` exponent units per level (12, 16, 20, ... by default).
    """

    rules: dict = field(default_factory=lambda: {n: (1, e) for n, e in DEFAULT_EXPONENTS.items()})
    step: int = 4

    def __post_init__(self):
        levels = sorted(self.rules)
        if not levels:
            raise ValueError("budget table is empty")
        exps = [self.rules[n][1] for n in levels]
        if self.step < 0 or any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("budget exponents must be strictly increasing in the level")
        for n in levels:
            c, e = self.rules[n]
            if c < 0 or e < 0:
                raise ValueError(f"negative budget entry at level {n}")

    def rule(self, n: int) -> tuple[int, int]:
        _check_level(n)
        if n in self.rules:
            return self.rules[n]
        top = max(self.rules)
        if n > top:
            c, e = self.rules[top]
            return c, e + self.step * (n - top)
        # gap below the top: borrow the nearest configured level above
        above = min(m for m in self.rules if m > n)
        return self.rules[above]

    @classmethod
    def uniform(cls, constant: int, exponent: int) -> "FuelBudget":
        """One rule at every level; used to override the hierarchy wholesale."""
        return cls({0: (constant, exponent)}, step=0)


def budget_for(budget: FuelBudget, n: int, k: int) -> int:
    c, e = budget.rule(n)
    return c * k ** e


class StepMeter:
    """Counts abstract steps against a limit; confined to one evaluation."""

    __slots__ = ("consumed", "limit")

    def __init__(self, limit: int | None = None):
        self.consumed = 0
        self.limit = limit

    def consume(self, n: int = 1) -> None:
        self.consumed += n
        if self.limit is not None and self.consumed > self.limit:
            raise BudgetExceededError(self.consumed, self.limit)


_meter: contextvars.ContextVar[StepMeter | None] = contextvars.ContextVar("stratum_meter", default=None)


def current_meter() -> StepMeter | None:
    return _meter.get()


def tick(n: int = 1) -> None:
    meter = _meter.get()
    if meter is not None:
        meter.consume(n)


@contextlib.contextmanager
def metering(limit: int | None = None) -> Iterator[StepMeter]:
    meter = StepMeter(limit)
    token = _meter.set(meter)
    try:
        yield meter
    finally:
        _meter.reset(token)


@dataclass(frozen=True)
class Value:
    q: Fraction


@dataclass(frozen=True)
class BudgetExceeded:
    consumed: int


def metered_approx(x, k: int, budget: FuelBudget | None = None):
    """Approximate ``x`` at precision ``k`` under the budget of ``x.level``.

    Memo caches are bypassed while metering, so the step count of a given
    request is the same on every run.
    """
    budget = budget or FuelBudget()
    limit = budget_for(budget, x.level, k)
    try:
        with metering(limit):
            q = x.approx(k)
    except BudgetExceededError as exc:
        return BudgetExceeded(exc.consumed)
    return Value(q)


def count_steps(x, k: int) -> int:
    with metering(None) as meter:
        x.approx(k)
    return meter.consumed


@dataclass(frozen=True)
class Tamed:
    max_ratio: Fraction


@dataclass(frozen=True)
class NotWitnessed:
    k: int


def tamed_check(x, d: int, k_max: int):
    """Empirical check that ``x``'s approximants cost O(k**d) steps.

    The fitted constant is ``max steps(k) / k**d`` over ``1..k_max``.  A
    degree-``d`` polynomial cannot grow by more than ``2**d`` when ``k``
    doubles (up to an additive ``2**d`` for start-up costs), so the first
    ``2j`` with ``steps(2j) > 2**d * (steps(j) + 1)`` is reported as the
    point where no degree-``d`` fit holds.
    """
    steps = {k: count_steps(x, k) for k in range(1, k_max + 1)}
    for k in range(2, k_max + 1, 2):
        if steps[k] > 2 ** d * (steps[k // 2] + 1):
            return NotWitnessed(k)
    return Tamed(max(Fraction(s, k ** d) for k, s in steps.items()))
