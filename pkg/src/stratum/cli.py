"""Command-line front end.

Every numeric result is printed as
``value=<decimal> error<=2^-K rational=<p>/<q> level=<n>``.  The decimal is
a truncation, so each printed digit is certified.

Exit codes: 0 success, 1 domain errors (parse, apartness, domain), 2 budget
exhausted, 3 semi-decision gave up (Unknown, no gap, not separated).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import dsl
from .errors import BudgetExceededError, NotSeparated, StratumError
from .hahnbanach import q2_demo, square_grid, stepwise_demo, verify_domination
from .levels import DEFAULT_EXPONENTS, BudgetExceeded, FuelBudget, metered_approx
from .real import FractalReal, dyadic
from .topology import (CompactInterval, Covers, PointSet, canonical_point_cover, effective_min,
                       outer_measure_upper, separate)

EXIT_OK, EXIT_DOMAIN, EXIT_BUDGET, EXIT_UNKNOWN = 0, 1, 2, 3


@dataclass
class Config:
    budget: FuelBudget = field(default_factory=FuelBudget)
    default_precision: int = 20
    apartness_bound: int = 64


def load_config(path: str | None) -> Config:
    """Read a flat ``key=value`` file; missing keys keep their defaults."""
    if path is None:
        return Config()
    rules = {n: [1, e] for n, e in DEFAULT_EXPONENTS.items()}
    cfg = Config()
    with open(path, encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            number = int(value)
            parts = key.split(".")
            if len(parts) == 3 and parts[0] == "budget" and parts[2] in ("constant", "exponent"):
                level = int(parts[1])
                if level < 0:
                    raise ValueError(f"{path}:{lineno}: negative level")
                entry = rules.setdefault(level, list(FuelBudget().rule(level)))
                entry[0 if parts[2] == "constant" else 1] = number
            elif key == "default_precision":
                if number < 1:
                    raise ValueError(f"{path}:{lineno}: default_precision must be at least 1")
                cfg.default_precision = number
            elif key == "apartness_bound":
                cfg.apartness_bound = number
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    cfg.budget = FuelBudget({n: tuple(v) for n, v in rules.items()})
    return cfg


def truncated_decimal(q: Fraction, digits: int) -> str:
    """``q`` cut (toward zero) to ``digits`` places."""
    sign = "-" if q < 0 else ""
    scaled = math.floor(abs(q) * 10 ** digits)
    whole, frac = divmod(scaled, 10 ** digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def decimal_digits(k: int) -> int:
    """Least ``D`` with ``10**-D <= 2**-(k+1)``."""
    d = 0
    while Fraction(1, 10 ** d) > dyadic(k + 1):
        d += 1
    return d


def payload(x: FractalReal, k: int, q: Fraction | None = None) -> str:
    """Approximation read at ``k+1``; truncation adds under ``2**-(k+1)``."""
    if q is None:
        q = x.approx(k + 1)
    return (f"value={truncated_decimal(q, decimal_digits(k))} error<=2^-{k} "
            f"rational={q.numerator}/{q.denominator} level={x.level}")


def _rational_arg(text: str) -> Fraction:
    v = dsl.eval_expr(text)
    if v.exact is None:
        raise ValueError(f"{text!r} is not a rational constant")
    return v.exact


def _fmt_real(x: FractalReal, k: int = 20) -> str:
    if x.exact is not None:
        q = x.exact
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return truncated_decimal(x.approx(k + 1), decimal_digits(k))


def cmd_approx(args, cfg: Config) -> int:
    e = dsl.parse(args.expr)
    x = dsl.eval_expr(e, cfg.apartness_bound)
    k = args.k
    if args.unmetered:
        print(payload(x, k))
        return EXIT_OK
    result = metered_approx(x, k + 1, cfg.budget)
    if isinstance(result, BudgetExceeded):
        print(f"budget exceeded at level {x.level}: {result.consumed} steps", file=sys.stderr)
        return EXIT_BUDGET
    print(payload(x, k, result.q))
    return EXIT_OK


def cmd_level(args, cfg: Config) -> int:
    print(dsl.infer_level(args.expr))
    return EXIT_OK


def cmd_classify(args, cfg: Config) -> int:
    print(dsl.classify(args.expr))
    return EXIT_OK


def cmd_diff(args, cfg: Config) -> int:
    e = dsl.Deriv(dsl.parse(args.expr), dsl.parse(args.at))
    print(payload(dsl.eval_expr(e, cfg.apartness_bound), args.k))
    return EXIT_OK


def cmd_integrate(args, cfg: Config) -> int:
    e = dsl.Integral(dsl.parse(args.expr), dsl.parse(args.lo), dsl.parse(args.hi))
    print(payload(dsl.eval_expr(e, cfg.apartness_bound), args.k))
    return EXIT_OK


def cmd_min(args, cfg: Config) -> int:
    lo, hi = _rational_arg(args.lo), _rational_arg(args.hi)
    body = dsl.parse(args.expr)
    F = dsl.Evaluator(cfg.apartness_bound).function(body, lo, hi)
    xstar, val = effective_min(CompactInterval(lo, hi), F, args.k)
    val = val.with_level(dsl.infer_level(dsl.MinOn(body, lo, hi)))
    print(payload(val, args.k))
    print(f"argmin={xstar.exact.numerator}/{xstar.exact.denominator}")
    return EXIT_OK


def cmd_separate(args, cfg: Config) -> int:
    x = dsl.eval_expr(args.first, cfg.apartness_bound)
    y = dsl.eval_expr(args.second, cfg.apartness_bound)
    (a, b), (c, d) = separate(x, y, args.k)
    print(f"first=({a}, {b})")
    print(f"second=({c}, {d})")
    return EXIT_OK


def cmd_measure(args, cfg: Config) -> int:
    points = [_rational_arg(p) for p in args.points.split(",") if p.strip()]
    eps = _rational_arg(args.eps)
    cover = canonical_point_cover(points, eps)
    verdict = outer_measure_upper(cover, PointSet(points))
    if not isinstance(verdict, Covers):
        print("DoesNotCover")
        return EXIT_UNKNOWN
    for a, b in cover:
        print(f"interval=({a}, {b})")
    print(f"Covers total={verdict.total_length}")
    return EXIT_OK


def cmd_hb(args, cfg: Config) -> int:
    demo = stepwise_demo() if args.demo == "stepwise" else q2_demo()
    lo, hi = demo.interval
    print(f"interval=[{_fmt_real(lo)}, {_fmt_real(hi)}]")
    print(f"chosen={_fmt_real(demo.chosen)}")
    verdict = verify_domination(demo.extension, demo.sublinear, square_grid(2))
    print(type(verdict).__name__ if not hasattr(verdict, "vector") else f"ViolatedAt{verdict.vector}")
    print(f"level={demo.extension.level}")
    return EXIT_OK


def cmd_gap(args, cfg: Config) -> int:
    lo, hi, x0 = _rational_arg(args.lo), _rational_arg(args.hi), _rational_arg(args.x0)
    cert = dsl.gap_certificate(args.expr, lo, hi, x0, args.k, cfg.apartness_bound)
    if isinstance(cert, dsl.NoGapFound):
        print("NoGapFound")
        return EXIT_UNKNOWN
    print(f"witness={cert.witness_point} delta={cert.delta} level={cert.level}")
    return EXIT_OK


def cmd_enum(args, cfg: Config) -> int:
    for i in range(args.n):
        print(dsl.to_text(dsl.enumerate_terms(i)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stratum", description="Level-tagged exact real computation.")
    p.add_argument("--config", help="key=value file with budgets and defaults")
    sub = p.add_subparsers(dest="command", required=True)

    def with_k(sp):
        sp.add_argument("-k", type=int, default=None, help="target precision 2^-K")
        return sp

    sp = with_k(sub.add_parser("approx", help="approximate a closed expression"))
    sp.add_argument("expr")
    sp.add_argument("--unmetered", action="store_true", help="skip the level budget")
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("level", help="inferred definability level")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_level)

    sp = sub.add_parser("classify", help="syntactic number class")
    sp.add_argument("expr")
    sp.set_defaults(func=cmd_classify)

    sp = with_k(sub.add_parser("diff", help="derivative of a body in x at a point"))
    sp.add_argument("expr")
    sp.add_argument("--at", required=True)
    sp.set_defaults(func=cmd_diff)

    sp = with_k(sub.add_parser("integrate", help="definite integral of a body in x"))
    sp.add_argument("expr")
    sp.add_argument("--lo", required=True)
    sp.add_argument("--hi", required=True)
    sp.set_defaults(func=cmd_integrate)

    sp = with_k(sub.add_parser("min", help="certified minimum on a rational interval"))
    sp.add_argument("expr")
    sp.add_argument("--lo", required=True)
    sp.add_argument("--hi", required=True)
    sp.set_defaults(func=cmd_min)

    sp = with_k(sub.add_parser("separate", help="disjoint intervals around two reals"))
    sp.add_argument("first")
    sp.add_argument("second")
    sp.set_defaults(func=cmd_separate)

    sp = sub.add_parser("measure", help="point-set cover of total length eps")
    sp.add_argument("--points", required=True, help="comma-separated rationals")
    sp.add_argument("--eps", required=True)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("hb-extend", help="run a dominated-extension demo")
    sp.add_argument("--demo", choices=["stepwise", "q2"], required=True)
    sp.set_defaults(func=cmd_hb)

    sp = with_k(sub.add_parser("gap", help="certify that x0 is not a minimiser"))
    sp.add_argument("expr")
    sp.add_argument("--lo", required=True)
    sp.add_argument("--hi", required=True)
    sp.add_argument("--x0", required=True)
    sp.set_defaults(func=cmd_gap)

    sp = sub.add_parser("enum", help="list the first N closed terms")
    sp.add_argument("-n", type=int, required=True)
    sp.set_defaults(func=cmd_enum)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if getattr(args, "k", None) is None and "k" in vars(args):
        args.k = cfg.default_precision
    try:
        return args.func(args, cfg)
    except NotSeparated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (StratumError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
