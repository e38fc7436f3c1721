"""Exact symbolic scalars for PGF manipulation."""

from .approx import approx_decimal, format_significant
from .expr import (ONE, ZERO, Expr, arith, const, differentiate, equal, exp,
                   param, substitute, substitute_all, taylor_coeff,
                   taylor_coeffs, var)
from .poly import Symbol, SymbolKind
from .series import taylor_box
from .textio import parse_expr, render

__all__ = [
    "Expr", "Symbol", "SymbolKind", "ONE", "ZERO", "arith", "const", "var",
    "param", "exp", "substitute", "substitute_all", "differentiate",
    "taylor_coeff", "taylor_coeffs", "equal", "approx_decimal",
    "format_significant", "taylor_box", "parse_expr", "render",
]
