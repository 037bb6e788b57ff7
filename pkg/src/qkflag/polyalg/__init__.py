"""Exact multivariate Laurent polynomial and rational-function arithmetic."""

from qkflag.polyalg.gcd import divexact, gcd
from qkflag.polyalg.laurent import (
    AlphabetError,
    InexactDivisionError,
    LaurentPoly,
    NonInvertibleError,
)
from qkflag.polyalg.numbers import QQ
from qkflag.polyalg.order import GRLEX, LEX, TermOrder
from qkflag.polyalg.parse import ParseError, parse_poly, parse_ratfunc
from qkflag.polyalg.ratfunc import QQ_FIELD, FractionField, RatFunc, RationalField


def poly_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    """Apply ``op`` in {"add", "sub", "mul"}; alphabets must agree."""
    if a.gens != b.gens:
        raise AlphabetError(f"alphabet mismatch: {a.gens} vs {b.gens}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def substitute(f: LaurentPoly, bindings, gens=None) -> LaurentPoly:
    return f.substitute(bindings, gens)


def coeff_by_qdegree(f: LaurentPoly, d, qgens) -> LaurentPoly:
    return f.coeff_by_qdegree(d, qgens)


__all__ = [
    "AlphabetError",
    "FractionField",
    "GRLEX",
    "InexactDivisionError",
    "LEX",
    "LaurentPoly",
    "NonInvertibleError",
    "ParseError",
    "QQ",
    "QQ_FIELD",
    "RatFunc",
    "RationalField",
    "TermOrder",
    "coeff_by_qdegree",
    "divexact",
    "gcd",
    "parse_poly",
    "parse_ratfunc",
    "poly_arith",
    "substitute",
]
