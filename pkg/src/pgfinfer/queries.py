"""Posterior queries over an output PGF.

Every query except :func:`total_mass` normalizes first, so results are
posterior quantities even when observations left the PGF subnormalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from .errors import ZeroMassConditioning
from .semantics import Pgf, filter_event, pvar
from .symbolic import ONE, Expr, SymbolKind, approx_decimal, differentiate
from .symbolic.expr import substitute_all, taylor_coeffs

__all__ = ["QueryResult", "total_mass", "normalize", "posterior_prob", "moment",
           "marginal", "coefficients"]


@dataclass(frozen=True)
class QueryResult:
    exact: Expr
    decimal: Optional[str] = None
    digits: int = 10
    __hash__ = None

    @staticmethod
    def of(exact: Expr, digits=10):
        dec = approx_decimal(exact, {}, digits) if exact.is_constant() else None
        return QueryResult(exact, dec, digits)


def _program_symbols(F: Pgf):
    syms = set(F.vars)
    syms |= {s for s in F.expr.free_symbols() if s.kind == SymbolKind.PROGRAM_VAR}
    return syms


def _at_ones(e: Expr, F: Pgf) -> Expr:
    return substitute_all(e, {s: ONE for s in _program_symbols(F)})


def total_mass(F: Pgf) -> Expr:
    return _at_ones(F.expr, F)


def normalize(F: Pgf) -> Pgf:
    mass = total_mass(F)
    if mass.is_zero():
        raise ZeroMassConditioning("conditioning on an event of probability zero")
    if mass == ONE:
        return F
    return F.replace(F.expr / mass)


def posterior_prob(F: Pgf, g, digits=10) -> QueryResult:
    return QueryResult.of(total_mass(filter_event(normalize(F), g)), digits)


def moment(F: Pgf, v, order=1, digits=10) -> QueryResult:
    """Posterior mean (order 1) or variance (order 2) of ``v``."""
    if order not in (1, 2):
        raise ValueError("order must be 1 (mean) or 2 (variance)")
    G = normalize(F)
    v = pvar(v)
    d1 = differentiate(G.expr, v)
    mean = _at_ones(d1, G)
    if order == 1:
        return QueryResult.of(mean, digits)
    d2 = _at_ones(differentiate(d1, v), G)
    return QueryResult.of(d2 + mean - mean * mean, digits)


def marginal(F: Pgf, keep) -> Pgf:
    F = normalize(F)
    keep = {pvar(k) for k in keep}
    drop = {s: ONE for s in _program_symbols(F) if s not in keep}
    return Pgf(substitute_all(F.expr, drop), tuple(v for v in F.vars if v in keep))


def coefficients(F: Pgf, v, upto: int) -> List[Expr]:
    """Posterior masses of ``v = 0 .. upto`` (other variables left symbolic)."""
    return taylor_coeffs(normalize(F).expr, pvar(v), upto)
