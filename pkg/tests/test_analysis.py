from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import riemann_bracket_monotone, sqrt_bracket
from stratum import kernels
from stratum.analysis import (EffectiveFunction, PolynomialFunction, antiderivative, bernstein_approx,
                              bernstein_coefficients, differentiate, eval_fn, from_rational_map, integrate,
                              jackson_bound, lipschitz_modulus, poly_lipschitz, polynomial, sup_norm_bound,
                              taylor_shift)
from stratum.constants import e_constant, sqrt2
from stratum.errors import DomainViolation
from stratum.real import dyadic, embed_rational

small_q = st.fractions(min_value=-4, max_value=4, max_denominator=16)


def square(lo=0, hi=1):
    return polynomial([0, 0, 1], lo, hi)


def abs_half():
    return from_rational_map(lambda q: abs(q - Fraction(1, 2)), lipschitz_modulus(1), (0, 1))


def test_eval_fn_examples():
    F = square(-4, 4)
    y = eval_fn(F, embed_rational(3))
    assert all(y.approx(k) == 9 for k in range(21))
    z = eval_fn(F, sqrt2())
    assert abs(z.approx(10) - 2) < dyadic(10)
    ident = polynomial([0, 1], 0, 2)
    x = sqrt2()
    w = eval_fn(ident, x)
    for k in range(20):
        assert abs(w.approx(k) - x.approx(k)) < 2 * dyadic(k)


def test_eval_fn_generic_function_path():
    F = abs_half()
    v = eval_fn(F, sqrt2() * embed_rational(Fraction(1, 2)))  # ~0.7071
    lo, hi = sqrt_bracket(2, 40)
    for k in range(15):
        assert abs(v.approx(k) - (lo / 2 - Fraction(1, 2))) < dyadic(k)
    assert v.level == 1


def test_eval_fn_domain_violation():
    with pytest.raises(DomainViolation):
        eval_fn(square(0, 1), embed_rational(2))
    # indistinguishable at the boundary is accepted
    eval_fn(square(0, 1), embed_rational(1) + embed_rational(dyadic(30)) * sqrt2())


def test_differentiate_symbolic():
    assert abs(differentiate(square(-2, 2), embed_rational(1)).approx(10) - 2) < dyadic(10)
    d = differentiate(polynomial([0, 0, 0, 1], 0, 4), embed_rational(2))
    assert abs(d.approx(10) - 12) < dyadic(10)
    c = differentiate(polynomial([7], 0, 1), e_constant() * embed_rational(Fraction(1, 4)))
    assert all(abs(c.approx(k)) < dyadic(k) for k in range(20))
    assert d.level == 1
    assert c.level == 3


def test_differentiate_numeric_with_modulus():
    F = from_rational_map(lambda q: q * q, lipschitz_modulus(4), (-2, 2))
    # |(F(x+h) - F(x))/h - 2x| = |h|, so dmod(eps) = eps is sound
    with pytest.raises(ValueError):
        differentiate(F, embed_rational(1))
    d = differentiate(F, sqrt2(), dmod=lambda eps: eps)
    lo, _ = sqrt_bracket(2, 40)
    for k in range(0, 14, 3):
        assert abs(d.approx(k) - 2 * lo) < dyadic(k)
    assert d.level == 2
    near_top = differentiate(F, embed_rational(2), dmod=lambda eps: eps)
    assert abs(near_top.approx(8) - 4) < dyadic(8)


def test_integrate_examples():
    x = polynomial([0, 1])
    assert abs(integrate(x, 0, 1).approx(15) - Fraction(1, 2)) < dyadic(15)
    I = integrate(square(), 0, 1)
    lo, hi = riemann_bracket_monotone(lambda t: t * t, Fraction(0), Fraction(1), 4096)
    q = I.approx(15)
    assert lo - dyadic(15) < q < hi + dyadic(15)
    assert abs(q - Fraction(1, 3)) < dyadic(15)
    zero = integrate(square(), Fraction(1, 3), Fraction(1, 3))
    assert zero.exact == 0 and zero.level == 1
    assert I.level == 1


def test_integrate_preconditions():
    with pytest.raises(DomainViolation):
        integrate(square(), 0, 2)
    with pytest.raises(ValueError):
        integrate(square(), 1, 0)


def test_integrate_generic_function():
    I = integrate(abs_half(), 0, 1)
    for k in range(0, 11, 2):
        assert abs(I.approx(k) - Fraction(1, 4)) < dyadic(k)


def test_integrate_real_coefficients():
    F = polynomial([e_constant(), 0, sqrt2()], 0, 2)  # e + sqrt2 x^2
    I = integrate(F, 0, 2)
    assert I.level == 3
    truth = 2 * Fraction(27182818284590452354, 10**19) + Fraction(8, 3) * sqrt_bracket(2, 60)[0]
    for k in range(0, 16, 3):
        assert abs(I.approx(k) - truth) < dyadic(k)


def test_linearity():
    F, G = polynomial([1, -3, 2]), polynomial([0, 5, 0, -1])
    H = polynomial([1, 2, 2, -1])
    for k in range(0, 16, 5):
        lhs = integrate(H, 0, 1).approx(k)
        rhs = integrate(F, 0, 1).approx(k) + integrate(G, 0, 1).approx(k)
        assert abs(lhs - rhs) < 3 * dyadic(k)


def test_riemann_bracketing_on_monotone():
    F = polynomial([0, 1, 0, 1])  # x + x^3, increasing on [0, 1]
    truth = Fraction(3, 4)
    for k in range(2, 14, 3):
        q = integrate(F, 0, 1).approx(k)
        lo, hi = riemann_bracket_monotone(lambda t: t + t ** 3, Fraction(0), Fraction(1), 2 ** (k // 2 + 1))
        assert lo - dyadic(k) < q < hi + dyadic(k)
        assert abs(q - truth) < dyadic(k)


def test_antiderivative_and_ftc():
    G = antiderivative(square(), 0)
    assert G.level == 1
    assert abs(G(Fraction(1)).approx(12) - Fraction(1, 3)) < dyadic(12)
    assert G(Fraction(0)).exact == 0
    assert abs(G(Fraction(-1, 2) + Fraction(1, 2)).approx(5)) < dyadic(5)
    d = differentiate(G, embed_rational(Fraction(1, 2)))
    assert abs(d.approx(8) - Fraction(1, 4)) < dyadic(8)
    assert d.level == 2


def test_second_ftc_direction():
    F = polynomial([1, 0, 3], -1, 2)  # antiderivative x + x^3
    Gx = lambda t: t + t ** 3
    for a, b in [(-1, 2), (0, 1), (Fraction(-1, 3), Fraction(5, 4))]:
        q = integrate(F, a, b).approx(12)
        assert abs(q - (Gx(Fraction(b)) - Gx(Fraction(a)))) < dyadic(12)


def test_antiderivative_below_anchor():
    G = antiderivative(polynomial([0, 1], -1, 1), 0)
    assert abs(G(Fraction(-1)).approx(10) - Fraction(1, 2)) < dyadic(10)


def test_bernstein_reproduces_affine():
    B = bernstein_approx(polynomial([Fraction(1, 3), 2]), 10)
    assert B.coefficients == (Fraction(1, 3), Fraction(2))


def test_bernstein_square_closed_form():
    B = bernstein_approx(square(), 16)
    assert B.coefficients == (0, Fraction(1, 16), Fraction(15, 16))
    u = sup_norm_bound(square(), PolynomialFunction(B.coefficients), 12)
    assert Fraction(1, 64) <= u < Fraction(1, 64) + dyadic(12)


def test_bernstein_abs_convergence():
    F = abs_half()
    prev = None
    for j in range(1, 5):
        m = 4 ** j
        B = PolynomialFunction(bernstein_approx(F, m).coefficients)
        u = sup_norm_bound(F, B, 10)
        assert u <= Fraction(3, 2) / 2 ** j + dyadic(10)
        assert u <= jackson_bound(F, m) + dyadic(10)
        if prev is not None:
            assert u <= prev
        prev = u


def test_bernstein_domain_check():
    with pytest.raises(ValueError):
        bernstein_approx(square(0, 2), 4)


def test_sup_norm_examples():
    F = polynomial([1, 2, -3])
    assert sup_norm_bound(F, F, 10) < dyadic(10)
    u = sup_norm_bound(polynomial([0, 1]), polynomial([0]), 10)
    assert 1 <= u < 1 + dyadic(10)
    with pytest.raises(ValueError):
        sup_norm_bound(square(0, 1), square(0, 2), 4)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=7), small_q, st.integers(1, 200), st.integers(0, 30))
def test_polynomial_grid_matches_direct_evaluation(coeffs, lo, m, p):
    hi = lo + 2
    F = PolynomialFunction(coeffs, (lo, hi))
    zs = F.grid_values(lo, hi, m, p)
    assert len(zs) == m + 1
    for i in range(0, m + 1, max(1, m // 7)):
        x = lo + (hi - lo) * Fraction(i, m)
        exact = sum(Fraction(c) * x ** j for j, c in enumerate(coeffs))
        assert abs(Fraction(zs[i], 2 ** p) - exact) < dyadic(p)


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, min_size=1, max_size=6), small_q, st.integers(1, 60))
def test_closed_form_left_sum_is_exact(coeffs, lo, m):
    hi = lo + 1
    F = PolynomialFunction(coeffs, (lo, hi))
    h = (hi - lo) / m
    brute = sum(sum(Fraction(c) * (lo + i * h) ** j for j, c in enumerate(coeffs)) for i in range(m)) * h
    assert F.riemann_left_sum(lo, hi, m, 10) == brute


@settings(max_examples=60, deadline=None)
@given(st.lists(small_q, min_size=2, max_size=6), small_q, small_q)
def test_polynomial_modulus_is_sound(coeffs, x, y):
    lo, hi = Fraction(-4), Fraction(4)
    F = PolynomialFunction(coeffs, (lo, hi))
    fx = sum(Fraction(c) * x ** j for j, c in enumerate(coeffs))
    fy = sum(Fraction(c) * y ** j for j, c in enumerate(coeffs))
    # the Lipschitz bound must dominate the chord slope
    assert abs(fx - fy) <= F.lipschitz * abs(x - y)
    assert F.sup_bound >= abs(fx)


def test_bernstein_lipschitz_is_tight_for_monotone():
    assert poly_lipschitz([0, 0, 1], Fraction(0), Fraction(1)) == 2
    assert taylor_shift([0, 0, 1], Fraction(1), Fraction(2)) == [1, 4, 4]
    assert bernstein_coefficients([0, 0, 1]) == [0, 0, 1]


def test_real_coefficient_grid():
    F = polynomial([0, sqrt2()], 0, 1)
    zs = F.grid_values(Fraction(0), Fraction(1), 4, 20)
    lo, _ = sqrt_bracket(2, 40)
    for i, z in enumerate(zs):
        assert abs(Fraction(z, 2 ** 20) - lo * Fraction(i, 4)) < dyadic(19)


def test_generic_function_repr_and_call():
    F = abs_half()
    assert "EffectiveFunction" in repr(F)
    assert F(Fraction(0)).exact == Fraction(1, 2)
    assert F.sup_bound >= Fraction(1, 2)
    with pytest.raises(ValueError):
        EffectiveFunction(lambda q: embed_rational(q), lipschitz_modulus(1), 0, (1, 0))


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_integer_bounds_stay_exact():
    F = polynomial([Fraction(1, 3), -2, 0, 5])
    assert F.grid_values(0, 1, 7, 20) == F.grid_values(Fraction(0), Fraction(1), 7, 20)
    assert isinstance(F.riemann_left_sum(0, 1, 7, 20), Fraction)
