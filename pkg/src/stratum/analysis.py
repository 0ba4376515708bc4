"""Effective functions with moduli of continuity, and calculus over them.

An :class:`EffectiveFunction` acts on rational points (returning fractal
reals) and carries a modulus ``eps -> delta`` with
``|x - y| < delta(eps)  =>  |f(x) - f(y)| < eps`` on its domain.  Everything
else (evaluation at real points, Riemann integration, sup norms, minima)
is derived from those two pieces.

:class:`PolynomialFunction` is the workhorse: it knows its coefficients, so
grids are evaluated by exact forward differencing and left Riemann sums
have a closed form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Callable, Sequence, Union

from . import kernels
from .constants import RationalPolynomial
from .errors import DomainViolation
from .levels import tick
from .real import (FractalReal, Ordering, Provenance, RationalLike, ceil_log2, compare_at,
                   dyadic, embed_rational)

Modulus = Callable[[Fraction], Fraction]
Coefficient = Union[Fraction, FractalReal]

DOMAIN_CHECK_PRECISION = 16


def lipschitz_modulus(lipschitz: RationalLike, width: RationalLike = 1) -> Modulus:
    """Modulus of a function with Lipschitz constant ``lipschitz``."""
    lipschitz = Fraction(lipschitz)
    if lipschitz <= 0:
        wide = Fraction(width) + 1
        return lambda eps: wide
    return lambda eps: Fraction(eps) / lipschitz


def _round_scaled(v: Fraction, p: int) -> int:
    return math.floor(v * (1 << p) + Fraction(1, 2))


def _grid_points(lo: Fraction, hi: Fraction, m: int) -> list[Fraction]:
    lo, hi = Fraction(lo), Fraction(hi)
    h = (hi - lo) / m
    return [lo + i * h for i in range(m + 1)]


def partition_count(width: Fraction, delta: Fraction) -> int:
    """Least ``m`` with ``width / m <= delta``."""
    if width <= 0:
        return 1
    return max(1, math.ceil(width / delta))


class EffectiveFunction:
    """A function on a closed rational interval with a computable modulus."""

    def __init__(self, rational_eval: Callable[[Fraction], FractalReal], modulus: Modulus,
                 level: int, domain: tuple[RationalLike, RationalLike], body=None,
                 derivative: Callable[[], "EffectiveFunction"] | None = None,
                 diff_modulus: Modulus | None = None):
        lo, hi = Fraction(domain[0]), Fraction(domain[1])
        if lo > hi:
            raise ValueError("empty domain")
        self.rational_eval = rational_eval
        self.modulus = modulus
        self.level = level
        self.domain = (lo, hi)
        self.body = body
        self.derivative = derivative
        self.diff_modulus = diff_modulus

    def __repr__(self):
        what = self.body if self.body is not None else type(self).__name__
        return f"<EffectiveFunction {what} on [{self.domain[0]}, {self.domain[1]}] level={self.level}>"

    def __call__(self, x) -> FractalReal:
        if isinstance(x, FractalReal):
            return eval_fn(self, x)
        return self.rational_eval(Fraction(x))

    def grid_values(self, lo: Fraction, hi: Fraction, m: int, p: int) -> list[int]:
        """Integers ``z_i`` with ``|f(lo + i(hi-lo)/m) - z_i 2**-p| < 2**-p``, ``i = 0..m``."""
        out = []
        for x in _grid_points(lo, hi, m):
            tick()
            out.append(_round_scaled(self.rational_eval(x).approx(p + 1), p))
        return out

    def riemann_left_sum(self, lo: Fraction, hi: Fraction, m: int, p: int) -> Fraction:
        """Left sum over ``m`` equal cells, within ``(hi - lo) 2**-p`` of the exact sum."""
        lo, hi = Fraction(lo), Fraction(hi)
        zs = self.grid_values(lo, hi, m, p)[:-1]
        return Fraction(sum(zs), 1 << p) * (hi - lo) / m

    @cached_property
    def sup_bound(self) -> Fraction:
        """A rational ``M >= sup |f|`` on the domain."""
        lo, hi = self.domain
        m = partition_count(hi - lo, self.modulus(Fraction(1)))
        zs = self.grid_values(lo, hi, m, 1)
        return Fraction(max(abs(z) for z in zs), 2) + Fraction(3, 2)


def from_rational_map(f: Callable[[Fraction], Fraction], modulus: Modulus, domain, level: int = 0,
                      body=None) -> EffectiveFunction:
    """Wrap an exact map on rationals (values are embedded at ``level``)."""
    return EffectiveFunction(lambda q: embed_rational(f(q), level), modulus, level, domain, body=body)


def _poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _coef_bound(c: Coefficient) -> Fraction:
    return c.magnitude_bound if isinstance(c, FractalReal) else abs(c)


def _coef_approx(c: Coefficient, p: int) -> Fraction:
    return c.approx(p) if isinstance(c, FractalReal) else c


def taylor_shift(coeffs: Sequence[Fraction], a: Fraction, w: Fraction) -> list[Fraction]:
    """Coefficients of ``t -> p(a + w t)``."""
    out: list[Fraction] = []
    for c in reversed(coeffs):
        # out <- out * (a + w t) + c
        nxt = [Fraction(0)] * (len(out) + 1)
        for j, o in enumerate(out):
            nxt[j] += o * a
            nxt[j + 1] += o * w
        nxt[0] += c
        out = nxt
    return out or [Fraction(0)]


def bernstein_coefficients(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Bernstein-basis coefficients on ``[0, 1]`` of a monomial-basis polynomial."""
    d = len(coeffs) - 1
    binom_d = [math.comb(d, j) for j in range(d + 1)]
    scaled = [Fraction(c) / binom_d[j] for j, c in enumerate(coeffs)]
    return [sum((math.comb(i, j) * scaled[j] for j in range(i + 1)), Fraction(0)) for i in range(d + 1)]


def poly_lipschitz(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction) -> Fraction:
    """Bound on ``|p'|`` over ``[lo, hi]`` from the Bernstein control polygon."""
    d = len(coeffs) - 1
    if d <= 0:
        return Fraction(0)
    if d == 1:
        return abs(Fraction(coeffs[1]))
    if hi == lo:
        return sum((j * abs(c) * max(abs(lo), 1) ** (j - 1) for j, c in enumerate(coeffs)), Fraction(0))
    b = bernstein_coefficients(taylor_shift(coeffs, lo, hi - lo))
    return d * max(abs(b[i + 1] - b[i]) for i in range(d)) / (hi - lo)


class PolynomialFunction(EffectiveFunction):
    """``sum c_j x**j`` with rational or fractal-real coefficients."""

    def __init__(self, coeffs: Sequence[Coefficient | int], domain=(0, 1), level: int | None = None,
                 body=None):
        cs = [c if isinstance(c, FractalReal) else Fraction(c) for c in coeffs] or [Fraction(0)]
        while len(cs) > 1 and not isinstance(cs[-1], FractalReal) and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs
        self.exact = all(not isinstance(c, FractalReal) for c in cs)
        if level is None:
            level = max((c.level for c in cs if isinstance(c, FractalReal)), default=0)
        super().__init__(self._eval_at, self._modulus, level, domain, body=body,
                         derivative=self._derivative)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @cached_property
    def _radius(self) -> Fraction:
        lo, hi = self.domain
        return max(abs(lo), abs(hi))

    @cached_property
    def lipschitz(self) -> Fraction:
        lo, hi = self.domain
        if self.exact:
            return poly_lipschitz(self.coeffs, lo, hi)
        r = self._radius
        return sum((j * _coef_bound(c) * r ** (j - 1) for j, c in enumerate(self.coeffs) if j), Fraction(0))

    def _modulus(self, eps: Fraction) -> Fraction:
        lo, hi = self.domain
        return lipschitz_modulus(self.lipschitz, hi - lo)(eps)

    @cached_property
    def sup_bound(self) -> Fraction:
        lo, hi = self.domain
        if self.exact and hi > lo and self.degree <= 512:
            return max(abs(b) for b in bernstein_coefficients(taylor_shift(self.coeffs, lo, hi - lo)))
        r = self._radius
        return sum((_coef_bound(c) * r ** j for j, c in enumerate(self.coeffs)), Fraction(0))

    def approx_coeffs(self, p: int) -> list[Fraction]:
        return [_coef_approx(c, p) for c in self.coeffs]

    def _coeff_precision(self, p: int, radius: Fraction) -> int:
        """Coefficient precision keeping ``sum_j |dc_j| r**j <= 2**-p``."""
        weight = sum((radius ** j for j in range(len(self.coeffs))), Fraction(0))
        return p + max(0, ceil_log2(weight))

    def _eval_at(self, q: Fraction) -> FractalReal:
        if self.exact:
            tick(len(self.coeffs))
            return embed_rational(_poly_eval(self.coeffs, q), self.level)
        r = abs(q)
        coeffs = self.coeffs

        def approximant(k: int) -> Fraction:
            c = self._coeff_precision(k + 1, r)
            tick(len(coeffs))
            return _poly_eval([_coef_approx(a, c) for a in coeffs], q)

        bound = sum((_coef_bound(c) * r ** j for j, c in enumerate(coeffs)), Fraction(0))
        return FractalReal(approximant, self.level, bound, Provenance("derived", ("poly-eval",)))

    def _derivative(self) -> "PolynomialFunction":
        d = []
        for j, c in enumerate(self.coeffs[1:], start=1):
            d.append(c * j if isinstance(c, FractalReal) else c * j)
        return PolynomialFunction(d or [0], self.domain, self.level)

    def grid_values(self, lo: Fraction, hi: Fraction, m: int, p: int) -> list[int]:
        lo, hi = Fraction(lo), Fraction(hi)
        radius = max(abs(lo), abs(hi))
        cs = self.approx_coeffs(self._coeff_precision(p + 2, radius)) if not self.exact else self.coeffs
        d = len(cs) - 1
        h = (hi - lo) / m
        n0 = min(d, m) + 1
        vals = [_poly_eval(cs, lo + i * h) for i in range(n0)]
        den = math.lcm(*(v.denominator for v in vals))
        ints = [v.numerator * (den // v.denominator) for v in vals]
        tick((m + 1) * (d + 1))
        if m + 1 <= n0:
            return kernels.scaled_round(ints, den, p)
        diffs = []
        row = ints
        while row:
            diffs.append(row[0])
            row = [b - a for a, b in zip(row, row[1:])]
        q = kernels.forward_grid(diffs, m + 1)
        return kernels.scaled_round(q, den, p)

    def riemann_left_sum(self, lo: Fraction, hi: Fraction, m: int, p: int) -> Fraction:
        # sum_{i<m} q(i) = sum_j (Delta^j q)(0) * C(m, j+1)
        lo, hi = Fraction(lo), Fraction(hi)
        radius = max(abs(lo), abs(hi))
        cs = self.approx_coeffs(self._coeff_precision(p + 2, radius)) if not self.exact else self.coeffs
        h = (hi - lo) / m
        d = len(cs) - 1
        row = [_poly_eval(cs, lo + i * h) for i in range(d + 1)]
        total = Fraction(0)
        j = 0
        while row:
            total += row[0] * math.comb(m, j + 1)
            row = [b - a for a, b in zip(row, row[1:])]
            j += 1
        tick((d + 1) ** 2)
        return total * h


def polynomial(coeffs: Sequence[Coefficient | int], lo: RationalLike = 0, hi: RationalLike = 1,
               level: int | None = None) -> PolynomialFunction:
    return PolynomialFunction(coeffs, (lo, hi), level)


def _check_inside(F: EffectiveFunction, x: FractalReal, k: int = DOMAIN_CHECK_PRECISION) -> None:
    lo, hi = F.domain
    if compare_at(x, embed_rational(lo), k) is Ordering.LESS or \
            compare_at(x, embed_rational(hi), k) is Ordering.GREATER:
        raise DomainViolation(f"argument lies outside [{lo}, {hi}]")


def eval_fn(F: EffectiveFunction, x: FractalReal) -> FractalReal:
    """``F(x)`` for a fractal-real argument, via the modulus of ``F``."""
    _check_inside(F, x)
    level = max(F.level, x.level)
    lo, hi = F.domain
    if x.exact is not None:
        return F.rational_eval(x.exact).with_level(level)

    def approximant(k: int) -> Fraction:
        delta = F.modulus(dyadic(k + 1))
        j = max(0, ceil_log2(1 / delta))
        q = min(max(x.approx(j), lo), hi)
        return F.rational_eval(q).approx(k + 2)

    return FractalReal(approximant, level, F.sup_bound, Provenance("derived", ("apply",)))


def differentiate(F: EffectiveFunction, x: FractalReal, dmod: Modulus | None = None) -> FractalReal:
    """``F'(x)`` one level above ``max(F.level, x.level)``.

    Functions with a symbolic derivative use it; otherwise a sound modulus of
    convergence for the difference quotient must come from ``dmod`` or from
    ``F.diff_modulus``.
    """
    level = max(F.level, x.level) + 1
    if F.derivative is not None:
        return eval_fn(F.derivative(), x).with_level(level)
    dmod = dmod or F.diff_modulus
    if dmod is None:
        raise ValueError("no symbolic derivative and no convergence modulus supplied")
    _check_inside(F, x)
    lo, hi = F.domain
    width = hi - lo
    if width <= 0:
        raise DomainViolation("cannot differentiate on a degenerate domain")
    k_dir = ceil_log2(8 / width) if width < 8 else 0
    toward_lo = x.approx(max(0, k_dir)) > (lo + hi) / 2

    def approximant(k: int) -> Fraction:
        delta = min(dmod(dyadic(k + 1)) / 2, width / 4)
        t = max(0, ceil_log2(1 / delta))  # h = 2**-t <= delta
        h = dyadic(t) if not toward_lo else -dyadic(t)
        a = eval_fn(F, x + embed_rational(h)).approx(k + 2 + t)
        b = eval_fn(F, x).approx(k + 2 + t)
        return (a - b) / h

    bound = abs(approximant(0)) + 1
    return FractalReal(approximant, level, bound, Provenance("derived", ("diff",)))


def integrate(F: EffectiveFunction, a: RationalLike, b: RationalLike) -> FractalReal:
    """Definite integral by left Riemann sums sized from the modulus of ``F``."""
    a, b = Fraction(a), Fraction(b)
    level = F.level + 1
    if a > b:
        raise ValueError("integrate needs a <= b")
    lo, hi = F.domain
    if a < lo or b > hi:
        raise DomainViolation(f"[{a}, {b}] is not inside [{lo}, {hi}]")
    if a == b:
        return embed_rational(0, level)
    width = b - a
    wlog = ceil_log2(width)

    def approximant(k: int) -> Fraction:
        eps = dyadic(k + 1 + wlog)  # width * eps <= 2**-(k+1)
        m = partition_count(width, F.modulus(eps))
        p = k + 2 + max(0, wlog)
        return F.riemann_left_sum(a, b, m, p)

    return FractalReal(approximant, level, F.sup_bound * width + 1, Provenance("derived", ("integral",)))


def antiderivative(F: EffectiveFunction, a: RationalLike) -> EffectiveFunction:
    """``G(x) = integral of F from a to x``, one level above ``F``."""
    a = Fraction(a)
    lo, hi = F.domain
    if not lo <= a <= hi:
        raise DomainViolation(f"base point {a} outside [{lo}, {hi}]")

    def G(q: Fraction) -> FractalReal:
        if q >= a:
            return integrate(F, a, q)
        return arith_neg(integrate(F, q, a))

    bound = F.sup_bound
    return EffectiveFunction(G, lipschitz_modulus(bound, hi - lo), F.level + 1, F.domain,
                             diff_modulus=F.modulus)


def arith_neg(x: FractalReal) -> FractalReal:
    return -x


def bernstein_approx(F: EffectiveFunction, m: int, k: int = 20) -> RationalPolynomial:
    """Degree-``m`` Bernstein polynomial of ``F`` on ``[0, 1]`` (monomial basis).

    Node values are taken at precision ``k + ceil(log2(m+1)) + 1`` so that
    coefficient rounding contributes less than ``2**-k`` to the sup norm.
    """
    if F.domain != (0, 1):
        raise ValueError("bernstein_approx needs a function on [0, 1]")
    if m < 1:
        raise ValueError("degree must be positive")
    k0 = k + ceil_log2(m + 1) + 1
    b = [F.rational_eval(Fraction(i, m)).approx(k0) for i in range(m + 1)]
    den = math.lcm(*(v.denominator for v in b))
    nums = [v.numerator * (den // v.denominator) for v in b]
    coeffs = []
    for j in range(m + 1):
        acc = 0
        for i in range(j + 1):
            term = nums[i] * math.comb(m, i) * math.comb(m - i, j - i)
            acc += term if (j - i) % 2 == 0 else -term
        coeffs.append(Fraction(acc, den))
    return RationalPolynomial(coeffs, allow_zero=True)


def modulus_to_omega(modulus: Modulus, t: Fraction, j_max: int = 64) -> Fraction:
    """Dyadic ``eps`` with ``|x - y| <= t  =>  |f(x) - f(y)| < eps`` (smallest found)."""
    best = None
    for j in range(-j_max, j_max + 1):
        eps = dyadic(j)
        if modulus(eps) > t:
            best = eps
        else:
            break
    if best is None:
        raise ValueError("modulus never exceeds the requested step")
    return best


def jackson_bound(F: EffectiveFunction, m: int) -> Fraction:
    """``(3/2) * omega_F(1/sqrt(m))`` with the step rounded up to ``1/isqrt(m)``."""
    return Fraction(3, 2) * modulus_to_omega(F.modulus, Fraction(1, math.isqrt(m)))


def sup_norm_bound(F: EffectiveFunction, G: EffectiveFunction, k: int) -> Fraction:
    """``u`` with ``sup |F - G| <= u < sup |F - G| + 2**-k`` on the shared domain."""
    if F.domain != G.domain:
        raise ValueError("sup_norm_bound needs functions on the same domain")
    lo, hi = F.domain
    eps = dyadic(k + 2)
    mesh = min(F.modulus(eps), G.modulus(eps))
    m = partition_count(hi - lo, mesh)
    p = k + 3
    zf = F.grid_values(lo, hi, m, p)
    zg = G.grid_values(lo, hi, m, p)
    top = max(abs(a - b) for a, b in zip(zf, zg))
    return Fraction(top, 1 << p) + 3 * eps
