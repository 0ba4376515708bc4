"""A small language of definable reals: parse, print, level, evaluate, enumerate."""

from .enumerate import enumerate_terms
from .nodes import (Add, Const, Deriv, Div, Expr, IntLit, Integral, MinOn, Mul, Neg, Pow, RatLit, Root, Sub,
                    Var, to_text)
from .parser import parse
from .semantics import (Algebraic, Evaluator, GapCertificate, NoGapFound, RationalClass, Transcendental,
                        UnknownClass, classify, eval_expr, gap_certificate, infer_level, symbolic_diff)

__all__ = [
    "Add", "Algebraic", "Const", "Deriv", "Div", "Evaluator", "Expr", "GapCertificate", "IntLit", "Integral",
    "MinOn", "Mul", "Neg", "NoGapFound", "Pow", "RatLit", "RationalClass", "Root", "Sub", "Transcendental",
    "UnknownClass", "Var", "classify", "enumerate_terms", "eval_expr", "gap_certificate", "infer_level",
    "parse", "symbolic_diff", "to_text",
]
