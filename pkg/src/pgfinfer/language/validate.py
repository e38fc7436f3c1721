"""Static checks run before inference."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Tuple

from . import ast as A
from .parser import _stmt_exprs

__all__ = ["ViolationKind", "Violation", "validate", "UNSUPPORTED"]


class ViolationKind(str, enum.Enum):
    OBSERVE_INSIDE_LOOP = "ObserveInsideLoop"
    MISSING_INVARIANT = "MissingInvariant"
    LOOP_INSIDE_INVARIANT = "LoopInsideInvariant"
    PROBABILITY_OUT_OF_RANGE = "ProbabilityOutOfRange"
    UNDECLARED_PARAMETER = "UndeclaredParameter"


# constructs the engine cannot handle, as opposed to malformed input
UNSUPPORTED = {ViolationKind.OBSERVE_INSIDE_LOOP, ViolationKind.MISSING_INVARIANT,
               ViolationKind.LOOP_INSIDE_INVARIANT}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    message: str
    pos: Optional[Tuple[int, int]] = None

    def __str__(self):
        where = f"{self.pos[0]}:{self.pos[1]}: " if self.pos else ""
        return f"{where}{self.kind.value}: {self.message}"


def _literal(e):
    return e.as_fraction() if e.is_rational() else None


def _check_prob(e, what, pos, out, lo_open=False):
    q = _literal(e)
    if q is None:
        return
    if q > 1 or q < 0 or (lo_open and q == 0):
        bound = "(0, 1]" if lo_open else "[0, 1]"
        out.append(Violation(ViolationKind.PROBABILITY_OUT_OF_RANGE,
                             f"{what} {q} is outside {bound}", pos))


def _check_dist(d, pos, out):
    if isinstance(d, A.Bernoulli):
        _check_prob(d.p, "bernoulli parameter", pos, out)
    elif isinstance(d, A.Geometric):
        _check_prob(d.p, "geometric parameter", pos, out, lo_open=True)
    elif isinstance(d, A.Binomial):
        _check_prob(d.p, "binomial parameter", pos, out)
    elif isinstance(d, A.Poisson):
        q = _literal(d.rate)
        if q is not None and q < 0:
            out.append(Violation(ViolationKind.PROBABILITY_OUT_OF_RANGE,
                                 f"poisson rate {q} is negative", pos))


def _visit(stmts, out, in_loop, in_invariant, declared):
    for s in stmts:
        pos = getattr(s, "pos", None)
        for e in _stmt_exprs(s):
            for sym in sorted(e.free_symbols()):
                if sym.name not in declared:
                    out.append(Violation(ViolationKind.UNDECLARED_PARAMETER,
                                         f"parameter {sym.name!r} is not declared", pos))
        if isinstance(s, A.Observe) and (in_loop or in_invariant):
            out.append(Violation(ViolationKind.OBSERVE_INSIDE_LOOP,
                                 "observe inside a loop is not supported", pos))
        elif isinstance(s, (A.Sample, A.SampleAdd)):
            _check_dist(s.dist, pos, out)
        elif isinstance(s, A.Choice):
            _check_prob(s.prob, "choice probability", pos, out)
            _visit(s.left, out, in_loop, in_invariant, declared)
            _visit(s.right, out, in_loop, in_invariant, declared)
        elif isinstance(s, A.IfElse):
            _visit(s.then, out, in_loop, in_invariant, declared)
            _visit(s.orelse, out, in_loop, in_invariant, declared)
        elif isinstance(s, A.While):
            if in_invariant:
                out.append(Violation(ViolationKind.LOOP_INSIDE_INVARIANT,
                                     "loop invariants must be loop-free", pos))
            if s.invariant is None:
                out.append(Violation(ViolationKind.MISSING_INVARIANT,
                                     "while loop has no invariant annotation", pos))
            else:
                _visit(s.invariant, out, in_loop, True, declared)
            _visit(s.body, out, True, in_invariant, declared)


def validate(program: A.Program) -> List[Violation]:
    """Empty list on success, otherwise every violation found."""
    out: List[Violation] = []
    _visit(program.statements, out, False, False, set(program.parameters))
    return out
