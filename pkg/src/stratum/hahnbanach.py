"""Stepwise extension of dominated linear functionals in finite dimension.

Vectors are tuples of rationals in a fixed ambient basis.  A weighted-l1
sublinear functional over a coordinate-aligned subspace has a closed-form
admissible interval; anything else goes through a bounded grid search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import ChoiceOutsideInterval, DominanceViolated
from .real import FractalReal, Ordering, RationalLike, compare_at, dyadic, embed_rational

RationalVector = tuple[Fraction, ...]
Scalar = Union[FractalReal, RationalLike]

CERTIFY_PRECISION = 20
MIDPOINT_PRECISION = 16
GRID_RADIUS = 4
GRID_STEP = Fraction(1, 4)


def vector(*coords: RationalLike) -> RationalVector:
    return tuple(Fraction(c) for c in coords)


def _real(c: Scalar, level: int = 0) -> FractalReal:
    return c if isinstance(c, FractalReal) else embed_rational(c, level)


def _dot(coeffs: Sequence[Fraction], reals: Sequence[FractalReal]) -> FractalReal:
    """``sum a_i r_i``; exact inputs are summed exactly so rational results stay rational."""
    exact = Fraction(0)
    level = 0
    total = None
    for a, r in zip(coeffs, reals):
        if a == 0:
            continue
        level = max(level, r.level)
        if r.exact is not None:
            exact += a * r.exact
            continue
        term = r if a == 1 else a * r
        total = term if total is None else total + term
    if total is None:
        return embed_rational(exact, level)
    return total + exact if exact else total


def solve_in_span(basis: Sequence[RationalVector], x: RationalVector) -> list[Fraction] | None:
    """Exact coordinates of ``x`` in ``basis`` (linearly independent), or None."""
    r = len(basis)
    if r == 0:
        return [] if all(c == 0 for c in x) else None
    n = len(x)
    # augmented system: columns are basis vectors
    rows = [[basis[j][i] for j in range(r)] + [x[i]] for i in range(n)]
    pivots = []
    row = 0
    for col in range(r):
        piv = next((i for i in range(row, n) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[row], rows[piv] = rows[piv], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [v * inv for v in rows[row]]
        for i in range(n):
            if i != row and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row])]
        pivots.append(col)
        row += 1
    if any(rows[i][r] != 0 for i in range(row, n)):
        return None
    out = [Fraction(0)] * r
    for i, col in enumerate(pivots):
        out[col] = rows[i][r]
    return out


def rank(vectors: Sequence[RationalVector]) -> int:
    rows = [list(v) for v in vectors]
    rk = 0
    n = len(rows[0]) if rows else 0
    for col in range(n):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = rows[i][col] / rows[rk][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
    return rk


@dataclass(frozen=True)
class WeightedL1:
    """``p(x) = sum w_i |x_i|`` with nonnegative fractal-real weights."""

    weights: tuple[FractalReal, ...]

    def __init__(self, weights: Sequence[Scalar]):
        object.__setattr__(self, "weights", tuple(_real(w) for w in weights))

    @property
    def level(self) -> int:
        return max((w.level for w in self.weights), default=0)

    def __call__(self, x: RationalVector) -> FractalReal:
        return _dot([abs(c) for c in x], self.weights)


@dataclass(frozen=True)
class General:
    """Black-box sublinear functional with ``|p(x) - p(y)| <= L ||x - y||_1``."""

    evaluator: Callable[[RationalVector], FractalReal]
    lipschitz_bound: Fraction
    level: int = 0

    def __call__(self, x: RationalVector) -> FractalReal:
        return self.evaluator(x)


SublinearFunctional = Union[WeightedL1, General]


@dataclass(frozen=True)
class LinearFunctional:
    coefficients: tuple[FractalReal, ...]
    subspace_basis: tuple[RationalVector, ...]
    level: int

    def __init__(self, coefficients: Sequence[Scalar], subspace_basis: Sequence[Sequence[RationalLike]],
                 level: int | None = None):
        coeffs = tuple(_real(c) for c in coefficients)
        basis = tuple(vector(*b) for b in subspace_basis)
        if len(coeffs) != len(basis):
            raise ValueError("one coefficient per basis vector")
        if basis and rank(basis) != len(basis):
            raise ValueError("subspace basis is linearly dependent")
        if level is None:
            level = max((c.level for c in coeffs), default=0)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "subspace_basis", basis)
        object.__setattr__(self, "level", level)

    def __call__(self, x: Sequence[RationalLike]) -> FractalReal:
        x = vector(*x)
        coords = solve_in_span(self.subspace_basis, x)
        if coords is None:
            raise ValueError(f"{x} is outside the functional's domain")
        return _dot(coords, self.coefficients)


def _coordinate_form(f: LinearFunctional, dim: int) -> dict[int, FractalReal] | None:
    """``{i: f(e_i)}`` when ``f``'s domain is spanned by coordinate vectors, else None."""
    support = sorted({i for b in f.subspace_basis for i, c in enumerate(b) if c != 0})
    if len(support) != len(f.subspace_basis):
        return None
    out = {}
    for i in support:
        e = tuple(Fraction(int(j == i)) for j in range(dim))
        out[i] = f(e)
    return out


def _certified_greater(x: FractalReal, y: FractalReal) -> bool:
    return compare_at(x, y, CERTIFY_PRECISION) is Ordering.GREATER


def _closed_form_interval(coord: dict[int, FractalReal], p: WeightedL1, v: RationalVector):
    for i, fi in coord.items():
        w = p.weights[i]
        if _certified_greater(fi, w) or _certified_greater(-fi, w):
            raise DominanceViolated(f"|f(e_{i})| exceeds the weight of coordinate {i}")
    inside = _dot([v[i] for i in coord], [coord[i] for i in coord])
    outside = _dot([abs(c) if i not in coord else Fraction(0) for i, c in enumerate(v)], p.weights)
    if inside.exact is not None and outside.exact is not None:
        level = max(inside.level, outside.level)
        return (embed_rational(inside.exact - outside.exact, level),
                embed_rational(inside.exact + outside.exact, level))
    return inside - outside, inside + outside


def _grid_interval(f: LinearFunctional, p: SublinearFunctional, v: RationalVector):
    """Inward-rounded interval from a grid over ``t in [-R, R]^r`` (``u = sum t_j b_j``).

    Sound for constraints with ``u`` in that box; beyond the box nothing is
    claimed.
    """
    basis = f.subspace_basis
    k = CERTIFY_PRECISION
    fb = [c.approx(k) for c in f.coefficients]
    norm1 = [sum(abs(c) for c in b) for b in basis]
    lipschitz = sum((Fraction(p.lipschitz_bound) * n + abs(c) + dyadic(k) for n, c in zip(norm1, fb)),
                    Fraction(0))
    # mesh slack, plus approximation error of f(u) (|t_j| <= R) and of p
    slack = lipschitz * GRID_STEP / 2 + (GRID_RADIUS * len(basis) + 1) * dyadic(k)
    n = int(GRID_RADIUS / GRID_STEP)
    steps = [GRID_STEP * i for i in range(-n, n + 1)]
    hi = lo = None
    for ts in itertools.product(steps, repeat=len(basis)):
        u = tuple(sum((t * b[i] for t, b in zip(ts, basis)), Fraction(0)) for i in range(len(v)))
        fu = sum((t * c for t, c in zip(ts, fb)), Fraction(0))
        pu = p(u).approx(k)
        if fu - dyadic(k) > pu + dyadic(k):
            raise DominanceViolated(f"f exceeds p at {u}")
        up = p(tuple(a + b for a, b in zip(u, v))).approx(k) - fu
        down = fu - p(tuple(a - b for a, b in zip(u, v))).approx(k)
        hi = up if hi is None else min(hi, up)
        lo = down if lo is None else max(lo, down)
    lo, hi = lo + slack, hi - slack
    if lo > hi:
        raise DominanceViolated("grid search found an empty admissible interval")
    level = max(f.level, p.level)
    return embed_rational(lo, level), embed_rational(hi, level)


def admissible_interval(f: LinearFunctional, p: SublinearFunctional,
                        v: Sequence[RationalLike]) -> tuple[FractalReal, FractalReal]:
    """``[lo, hi]`` of values ``c`` keeping ``f(u) + t c <= p(u + t v)``."""
    v = vector(*v)
    if solve_in_span(f.subspace_basis, v) is not None:
        raise ValueError(f"{v} already lies in the functional's domain")
    if isinstance(p, WeightedL1):
        if len(p.weights) != len(v):
            raise ValueError("dimension mismatch between p and v")
        coord = _coordinate_form(f, len(v))
        if coord is not None:
            return _closed_form_interval(coord, p, v)
    return _grid_interval(f, p, v)


@dataclass(frozen=True)
class Midpoint:
    pass


def _pick(lo: FractalReal, hi: FractalReal, choice) -> FractalReal:
    if isinstance(choice, Midpoint) or choice == "midpoint":
        mid = (lo + hi) * Fraction(1, 2)
        q = mid.approx(MIDPOINT_PRECISION)
        c = embed_rational(q)
        k = MIDPOINT_PRECISION + 2
        if compare_at(c, lo, k) is not Ordering.LESS and compare_at(c, hi, k) is not Ordering.GREATER:
            if lo.exact is None or hi.exact is None or lo.exact <= q <= hi.exact:
                return c
        return mid
    c = embed_rational(choice)
    k = CERTIFY_PRECISION
    if compare_at(c, lo, k) is Ordering.LESS or compare_at(c, hi, k) is Ordering.GREATER:
        raise ChoiceOutsideInterval(f"{choice} is outside the admissible interval")
    return c


def extend(f: LinearFunctional, p: SublinearFunctional, new_basis: Sequence[Sequence[RationalLike]],
           choice="midpoint") -> LinearFunctional:
    """Extend ``f`` one basis vector at a time, staying below ``p``.

    ``choice`` is ``"midpoint"`` (or :class:`Midpoint`) or a list holding one
    rational per new basis vector.
    """
    new_basis = [vector(*v) for v in new_basis]
    if not new_basis:
        return f
    if isinstance(choice, (list, tuple)):
        if len(choice) != len(new_basis):
            raise ValueError("one choice per new basis vector")
        choices = list(choice)
    else:
        choices = [choice] * len(new_basis)
    current = f
    for v, ch in zip(new_basis, choices):
        lo, hi = admissible_interval(current, p, v)
        c = _pick(lo, hi, ch)
        current = LinearFunctional(current.coefficients + (c,), current.subspace_basis + (v,), current.level)
    return LinearFunctional(current.coefficients, current.subspace_basis, max(f.level, p.level) + 1)


@dataclass(frozen=True)
class Dominated:
    pass


@dataclass(frozen=True)
class ViolatedAt:
    vector: RationalVector


def verify_domination(F: LinearFunctional, p: SublinearFunctional,
                      samples: Sequence[Sequence[RationalLike]], k: int = CERTIFY_PRECISION):
    for x in samples:
        x = vector(*x)
        if compare_at(F(x), p(x), k) is Ordering.GREATER:
            return ViolatedAt(x)
    return Dominated()


def square_grid(radius: int, dim: int = 2) -> list[RationalVector]:
    """Integer points of ``{-radius..radius}**dim``."""
    r = range(-radius, radius + 1)
    return [vector(*pt) for pt in itertools.product(r, repeat=dim)]


@dataclass(frozen=True)
class DemoResult:
    interval: tuple[FractalReal, FractalReal]
    extension: LinearFunctional
    chosen: FractalReal
    sublinear: SublinearFunctional


def stepwise_demo(choice=1) -> DemoResult:
    """``V = span{1, sqrt2}`` in coordinates ``x + y sqrt2``; ``f(x) = x`` on ``U = span{1}``.

    ``p(x + y sqrt2) = sqrt2 |x| + sqrt2 |y sqrt2|`` so that ``p(sqrt2) = 2``.
    """
    from .constants import sqrt2

    r2 = sqrt2()
    p = WeightedL1([r2, 2])
    f = LinearFunctional([1], [(1, 0)], level=2)
    v = (0, 1)
    interval = admissible_interval(f, p, v)
    F = extend(f, p, [v], choice if choice == "midpoint" else [choice])
    return DemoResult(interval, F, F(v), p)


def q2_demo(choice=0) -> DemoResult:
    """``p(x, y) = sqrt2 |x| + pi |y|`` with ``f(x, 0) = sqrt2 x``, extended along ``(0, 1)``."""
    from .constants import pi_constant, sqrt2

    r2 = sqrt2(2)
    p = WeightedL1([r2, pi_constant()])
    f = LinearFunctional([r2], [(1, 0)])
    v = (0, 1)
    interval = admissible_interval(f, p, v)
    F = extend(f, p, [v], choice if choice == "midpoint" else [choice])
    return DemoResult(interval, F, F(v), p)
