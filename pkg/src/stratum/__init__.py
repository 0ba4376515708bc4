"""Exact real numbers tagged with definability levels.

Core pieces: :mod:`stratum.real` (fractal reals and their arithmetic),
:mod:`stratum.constants` (roots and series constants), :mod:`stratum.levels`
(step budgets), :mod:`stratum.analysis` and :mod:`stratum.topology`
(calculus, minima, covers), :mod:`stratum.hahnbanach` and :mod:`stratum.dsl`.
"""

from .constants import RationalPolynomial, e_constant, golden_ratio, liouville, pi_constant, poly_root, sqrt2
from .levels import BudgetExceeded, FuelBudget, Value, budget_for, metered_approx
from .real import (FractalReal, Ordering, approx, arith, compare_at, deciding_precision, divide,
                   embed_rational, invert)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "FractalReal", "FuelBudget", "Ordering", "RationalPolynomial", "Value", "approx",
    "arith", "budget_for", "compare_at", "deciding_precision", "divide", "e_constant", "embed_rational",
    "golden_ratio", "invert", "liouville", "metered_approx", "pi_constant", "poly_root", "sqrt2",
]
