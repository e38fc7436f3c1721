"""Exact Bayesian inference for discrete probabilistic programs.

Programs denote transformers of probability generating functions (PGFs);
posteriors, moments and masses are read off closed-form expressions.
"""

from .errors import (CapExceeded, EvaluationPole, InvariantRefuted, ParseError,
                     PgfError, UnsupportedConstruct, ZeroMassConditioning)
from .language import parse, validate
from .oracle import StateMap, compare, enumerate_program
from .queries import coefficients, marginal, moment, normalize, posterior_prob, total_mass
from .semantics import Pgf, filter_event, transform_program
from .symbolic import Expr, approx_decimal, parse_expr, render
from .verifier import Refuted, Verified, check_equivalence, check_invariant

__version__ = "0.1.0"

__all__ = [
    "parse", "validate", "Pgf", "transform_program", "filter_event",
    "total_mass", "normalize", "posterior_prob", "moment", "marginal", "coefficients",
    "check_invariant", "check_equivalence", "Verified", "Refuted",
    "StateMap", "enumerate_program", "compare",
    "Expr", "render", "parse_expr", "approx_decimal",
    "PgfError", "ParseError", "UnsupportedConstruct", "InvariantRefuted",
    "ZeroMassConditioning", "EvaluationPole", "CapExceeded",
]
