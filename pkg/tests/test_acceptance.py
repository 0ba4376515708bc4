"""The thirteen acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line (see ``acceptance_report``); the lines
are repeated in the pytest terminal summary.
"""

import itertools
import random
from fractions import Fraction
from math import isqrt

from acceptance_report import report
from oracles import bisect_root, e_bracket, leibniz_bracket, sqrt_bracket
from stratum import dsl
from stratum.analysis import (antiderivative, bernstein_approx, differentiate, from_rational_map, integrate,
                              lipschitz_modulus, polynomial, sup_norm_bound)
from stratum.constants import RationalPolynomial, e_constant, golden_ratio, liouville, pi_constant, poly_root, sqrt2
from stratum.hahnbanach import Dominated, square_grid, stepwise_demo, q2_demo, verify_domination
from stratum.levels import BudgetExceeded, FuelBudget, Value, budget_for, metered_approx
from stratum.real import dyadic, embed_rational, invert
from stratum.topology import (ClosedInterval, CompactInterval, Covers, DoesNotCover, PointSet,
                              canonical_point_cover, effective_min, outer_measure_upper, separate)

UNIT = CompactInterval(0, 1)


def random_isolated_roots(rng, count):
    """Irrational roots of x^2 - n and x^3 - n, each with an isolating interval and a bisection oracle."""
    out = []
    while len(out) < count:
        n = rng.randrange(2, 500)
        if len(out) % 2 == 0:
            if isqrt(n) ** 2 == n:
                continue
            coeffs, a = [-n, 0, 1], isqrt(n)
            f = lambda t, n=n: t * t - n
        else:
            a = round(n ** (1 / 3))
            while a ** 3 > n:
                a -= 1
            while (a + 1) ** 3 <= n:
                a += 1
            if a ** 3 == n:
                continue
            coeffs = [-n, 0, 0, 1]
            f = lambda t, n=n: t ** 3 - n
        out.append((poly_root(coeffs, a, a + 1), f, Fraction(a), Fraction(a + 1)))
    return out


def test_criterion_01_cauchy_consistency():
    rng = random.Random(1)
    ctors = {f"rational {q}": embed_rational(q) for q in (Fraction(0), Fraction(-7, 3), Fraction(22, 7))}
    for i, (r, _, _, _) in enumerate(random_isolated_roots(rng, 10)):
        ctors[f"root #{i}"] = r
    ctors.update({"e": e_constant(), "pi": pi_constant(), "liouville(2)": liouville(2),
                  "liouville(10)": liouville(10)})
    failures = []
    for name, x in ctors.items():
        vals = [x.approx(k) for k in range(26)]
        for j, k in itertools.combinations(range(26), 2):
            if not abs(vals[j] - vals[k]) < dyadic(j) + dyadic(k):
                failures.append(f"{name} j={j} k={k}")
    # the roots must also agree with an independent bisection
    for i, (r, f, a, b) in enumerate(random_isolated_roots(random.Random(1), 10)):
        lo, hi = bisect_root(f, a, b, dyadic(40))
        if not (lo - dyadic(25) < r.approx(25) < hi + dyadic(25)):
            failures.append(f"root #{i} off the bisection bracket")
    report(1, "Cauchy consistency, all constructors, j < k <= 25", failures)


def test_criterion_02_rational_oracle():
    rng = random.Random(2)
    failures = []
    for _ in range(500):
        a = Fraction(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 10 ** 4))
        b = Fraction(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 10 ** 4))
        x, y = embed_rational(a), embed_rational(b)
        ops = [("add", x + y, a + b), ("sub", x - y, a - b), ("mul", x * y, a * b)]
        if b != 0:
            k0 = next(k for k in range(200) if abs(b) > 2 * dyadic(k))
            ops.append(("inv", invert(y, k0), 1 / b))
        for name, z, want in ops:
            for k in range(21):
                if z.approx(k) != want:
                    failures.append(f"{name}({a}, {b}) at k={k}")
                    break
    report(2, "500 rational pairs, add/sub/mul/invert bit-exact for k <= 20", failures)


def test_criterion_03_sqrt2_residual():
    r = sqrt2()
    failures = [f"k={k}" for k in range(21) if not abs(r.approx(k) ** 2 - 2) < 6 * dyadic(k)]
    lo, hi = sqrt_bracket(2, 40)
    if not lo - dyadic(20) < r.approx(20) < hi + dyadic(20):
        failures.append("disagrees with integer square root")
    report(3, "sqrt2 residual |q^2 - 2| < 6 * 2^-k for k <= 20", failures)


def test_criterion_04_worked_constants():
    failures = []
    got = liouville(10).approx(20)
    if got != Fraction(110001, 1000000):
        failures.append(f"liouville(10) at 20 gave {got}")
    elo, ehi = e_bracket(40)
    q = e_constant().approx(20)
    if not (elo - dyadic(20) < q < ehi + dyadic(20)):
        failures.append("e outside partial-sum bracket")
    n = 1 << 17  # bracket width 4/(2n+1) < 2^-16
    plo, phi = leibniz_bracket(n)
    if not phi - plo < dyadic(16):
        failures.append("Leibniz bracket too wide")
    p = pi_constant().approx(15)
    if not (plo - dyadic(15) <= p <= phi + dyadic(15)):
        failures.append("Machin pi outside Leibniz bracket")
    report(4, "liouville(10) = 110001/10^6 exactly, e and pi against series oracles", failures)


def test_criterion_05_calculus():
    failures = []
    F = polynomial([0, 0, 1])
    integral = integrate(F, 0, 1)
    if not abs(integral.approx(15) - Fraction(1, 3)) < dyadic(15):
        failures.append("integral of x^2")
    if integral.level != F.level + 1:
        failures.append(f"integral level {integral.level}")
    A = antiderivative(F, 0)
    if A.level != F.level + 1:
        failures.append(f"antiderivative level {A.level}")
    d = differentiate(A, embed_rational(Fraction(1, 2)))
    if not abs(d.approx(8) - Fraction(1, 4)) < dyadic(8):
        failures.append(f"FTC round trip gave {d.approx(8)}")
    if d.level != A.level + 1:
        failures.append(f"derivative level {d.level}")
    report(5, "integral of x^2, FTC round trip, levels step by one", failures)


def test_criterion_06_effective_min():
    failures = []
    _, val = effective_min(UNIT, polynomial([1, -2, 1]), 10)
    if not abs(val.approx(10)) < dyadic(10):
        failures.append("(x-1)^2")
    rng = random.Random(6)
    for _ in range(20):
        v = Fraction(rng.randrange(0, 97), 96)
        c = Fraction(rng.randrange(-500, 500), rng.randrange(1, 100))
        _, val = effective_min(UNIT, polynomial([v * v + c, -2 * v, 1]), 10)
        if not abs(val.approx(10) - c) < dyadic(10):
            failures.append(f"vertex {v}, min {c}")
    report(6, "effective minimum within 2^-10 on 21 quadratics", failures)


def test_criterion_07_separation():
    consts = {"sqrt2": sqrt2(), "sqrt3": poly_root([-3, 0, 1], 1, 2), "phi": golden_ratio(),
              "e": e_constant(), "pi": pi_constant(), "liouville(2)": liouville(2),
              "liouville(10)": liouville(10), "1/3": embed_rational(Fraction(1, 3)),
              "e-1": e_constant() - embed_rational(1), "pi-3": pi_constant() - embed_rational(3),
              "cbrt2": poly_root([-2, 0, 0, 1], 1, 2)}
    pairs = list(itertools.combinations(consts, 2))[:50]
    failures = []
    for a, b in pairs:
        x, y = consts[a], consts[b]
        (lo1, hi1), (lo2, hi2) = separate(x, y, 60)
        if not (hi1 < lo2 or hi2 < lo1):
            failures.append(f"{a}/{b} overlap")
        for (lo, hi), z, name in (((lo1, hi1), x, a), ((lo2, hi2), y, b)):
            q = z.approx(80)
            if not (lo < q - dyadic(80) and q + dyadic(80) < hi):
                failures.append(f"{name} not inside its interval")
    report(7, f"separation of {len(pairs)} constant pairs", failures)


def test_criterion_08_measure():
    rng = random.Random(8)
    failures = []
    for trial in range(30):
        pts = [Fraction(rng.randrange(-100, 100), rng.randrange(1, 20)) for _ in range(rng.randrange(0, 9))]
        for k in range(21):
            eps = dyadic(k)
            r = outer_measure_upper(canonical_point_cover(pts, eps), PointSet(pts))
            if not (isinstance(r, Covers) and r.total_length <= eps):
                failures.append(f"trial {trial} k={k}")
    gap = [(Fraction(-1, 8), Fraction(1, 2)), (Fraction(1, 2), Fraction(9, 8))]
    if outer_measure_upper(gap, ClosedInterval(0, 1)) != DoesNotCover():
        failures.append("missed the uncovered point 1/2")
    ok = [(Fraction(-1, 8), Fraction(9, 16)), (Fraction(1, 2), Fraction(9, 8))]
    if outer_measure_upper(ok, ClosedInterval(0, 1)) != Covers(Fraction(21, 16)):
        failures.append("valid interval cover rejected")
    report(8, "point nullity for eps = 2^-k, k <= 20; exact interval coverage", failures)


def test_criterion_09_hahn_banach():
    failures = []
    d = stepwise_demo()
    lo, hi = d.interval
    if (lo.exact, hi.exact) != (-2, 2):
        failures.append(f"stepwise interval [{lo.approx(20)}, {hi.approx(20)}]")
    if d.chosen.exact != 1:
        failures.append("F(sqrt2) != 1")
    if verify_domination(d.extension, d.sublinear, square_grid(2)) != Dominated():
        failures.append("stepwise extension not dominated")
    q = q2_demo()
    lo, hi = q.interval
    pi = pi_constant().approx(40)
    if not (abs(lo.approx(30) + pi) < dyadic(29) and abs(hi.approx(30) - pi) < dyadic(29)):
        failures.append("q2 interval is not [-pi, pi]")
    if q.chosen.exact != 0:
        failures.append("alpha != 0")
    if verify_domination(q.extension, q.sublinear, square_grid(2)) != Dominated():
        failures.append("q2 extension not dominated")
    report(9, "stepwise and two-dimensional extension demos", failures)


def test_criterion_10_gap_certificate():
    failures = []
    body = "(x-1)^2"
    cert = dsl.gap_certificate(body, 0, 1, Fraction(9, 10), 12)
    if not isinstance(cert, dsl.GapCertificate):
        failures.append("no certificate")
    else:
        if cert.delta < dyadic(7):
            failures.append(f"delta {cert.delta}")
        if abs(cert.witness_point - 1) > Fraction(1, 64):
            failures.append(f"witness {cert.witness_point}")
        body_level = dsl.infer_level(dsl.MinOn(dsl.parse(body), 0, 1)) - 1
        if cert.level != body_level + 1:
            failures.append(f"level {cert.level}")
        if not (cert.witness_point - 1) ** 2 + cert.delta <= Fraction(1, 100):
            failures.append("certificate fails exact re-check")
    report(10, "gap certificate at x0 = 9/10 with delta >= 2^-7", failures)


def test_criterion_11_bernstein_jackson():
    failures = []
    F = from_rational_map(lambda t: abs(t - Fraction(1, 2)), lipschitz_modulus(1), (0, 1))
    bounds = []
    for m in (16, 64, 256):
        G = polynomial(bernstein_approx(F, m).coefficients)
        u = sup_norm_bound(F, G, 12)
        bounds.append(u)
        limit = Fraction(3, 2) / isqrt(m) + dyadic(10)
        if not u <= limit:
            failures.append(f"m={m}: {float(u):.5f} > {float(limit):.5f}")
    if any(b > a for a, b in zip(bounds, bounds[1:])):
        failures.append("bounds increase with m")
    sq = polynomial([0, 0, 1])
    u = sup_norm_bound(sq, polynomial(bernstein_approx(sq, 16).coefficients), 14)
    if not abs(u - Fraction(1, 64)) <= dyadic(12):
        failures.append(f"x^2 at m=16: {u}")
    report(11, "Bernstein error under the Jackson bound; x^2 error 1/64 at m = 16", failures)


def test_criterion_12_budgets():
    failures = []
    e = e_constant()
    for k in range(13):
        r = metered_approx(e, k)
        if not isinstance(r, Value):
            failures.append(f"k={k}: budget {budget_for(FuelBudget(), e.level, k)}, used {r.consumed}+")
    if not isinstance(metered_approx(e, 12, FuelBudget.uniform(1, 0)), BudgetExceeded):
        failures.append("c=1, e=0 did not exceed")
    b = FuelBudget()
    for k in range(2, 40):
        seq = [budget_for(b, n, k) for n in range(8)]
        if any(y <= x for x, y in zip(seq, seq[1:])):
            failures.append(f"budget not increasing at k={k}")
    report(12, "metered e under level-2 defaults for k <= 12; override; monotone budgets", failures)


def test_criterion_13_dsl():
    failures = []
    seen = set()
    for i in range(10000):
        t = dsl.enumerate_terms(i)
        if dsl.parse(dsl.to_text(t)) != t:
            failures.append(f"round trip at {i}")
        seen.add(t)
    if len(seen) != 10000:
        failures.append(f"only {len(seen)} distinct terms")
    table = {"root(x^2-2; 1, 2)": 1, "e": 2, "liouville(10)": 3, "integral(e*x; 0, 1)": 3}
    for text, want in table.items():
        if dsl.infer_level(text) != want:
            failures.append(f"level of {text}")
    report(13, "round trip and injectivity for 10000 terms; level table", failures)
