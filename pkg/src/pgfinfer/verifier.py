"""Equivalence of loop-free programs and loop-invariant checking.

Both checks run the programs once on the second-order input
``prod_i 1/(1 - u_i * v_i)``: the coefficient of ``prod_i u_i**n_i`` is the
Dirac state ``v = n``, so one canonical-equality test covers every input.
A :class:`Refuted` verdict means "not proven equal by canonical form" and
always carries the symbolic difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .language import ast as A
from .semantics import Pgf, _merge_vars, _stmts, filter_event, pvar, transform_program
from .symbolic import ONE, Expr, Symbol, SymbolKind, taylor_box

__all__ = ["SopContext", "Verified", "Refuted", "sop_input", "check_equivalence",
           "check_invariant", "WITNESS_DEGREE"]

WITNESS_DEGREE = 8


@dataclass(frozen=True)
class SopContext:
    pairs: Tuple[Tuple[Symbol, Symbol], ...] = ()

    @staticmethod
    def fresh(variables, avoid=()):
        """One fresh marker per variable, named ``u_<var>`` (underscored until unused)."""
        taken = {getattr(s, "name", s) for s in avoid} | {pvar(v).name for v in variables}
        pairs = []
        for v in variables:
            v = pvar(v)
            name = "u_" + v.name
            while name in taken:
                name = "_" + name
            taken.add(name)
            pairs.append((v, Symbol(name, SymbolKind.SOP_MARKER)))
        return SopContext(tuple(pairs))

    @property
    def variables(self):
        return tuple(v for v, _ in self.pairs)

    @property
    def markers(self):
        return tuple(u for _, u in self.pairs)


@dataclass(frozen=True)
class Verified:
    def __bool__(self):
        return True

    def __str__(self):
        return "verified"


@dataclass(frozen=True)
class Refuted:
    difference: Expr
    witness: Optional[Dict[str, int]] = None
    condition: Optional[str] = None
    __hash__ = None

    def __bool__(self):
        return False

    def __str__(self):
        s = "refuted"
        if self.condition:
            s += f" ({self.condition})"
        if self.witness is not None:
            s += " witness " + ", ".join(f"{k}={v}" for k, v in self.witness.items())
        return s


def sop_input(ctx: SopContext) -> Pgf:
    e = ONE
    for v, u in ctx.pairs:
        e = e / (1 - Expr.symbol(u) * Expr.symbol(v))
    return Pgf(e, ctx.variables)


def find_witness(diff: Expr, ctx: SopContext, bound=WITNESS_DEGREE):
    """Smallest Dirac input (by total size <= bound) where ``diff`` is nonzero."""
    markers = ctx.markers
    if not markers:
        return {} if not diff.is_zero() else None
    deg = 0
    while True:
        coeffs = taylor_box(diff, markers, deg, max_total=deg)
        if coeffs:
            best = min(coeffs, key=lambda k: (sum(k), k))
            return {v.name: n for v, n in zip(ctx.variables, best)}
        if deg >= bound:
            return None
        deg = min(bound, max(1, deg * 2))


def _program_vars(stmts):
    return [n for s in stmts for n in A.stmt_vars(s)]


def _context(stmt_groups, extra=()):
    names = _merge_vars(*[_program_vars(g) for g in stmt_groups], extra)
    params = {sym for g in stmt_groups for s in A.walk(g)
              for e in _exprs(s) for sym in e.free_symbols()}
    return SopContext.fresh(names, avoid=params)


def _exprs(s):
    if isinstance(s, A.Choice):
        return [s.prob]
    if isinstance(s, (A.Sample, A.SampleAdd)):
        return A.dist_exprs(s.dist)
    return []


def check_equivalence(p1, p2, variables=()) -> "Verified | Refuted":
    """Decide whether two loop-free, observe-free programs agree on every input."""
    s1, s2 = _stmts(p1), _stmts(p2)
    ctx = _context([s1, s2], variables)
    sop = sop_input(ctx)
    out1 = transform_program(s1, sop).expr
    out2 = transform_program(s2, sop).expr
    diff = out1 - out2
    if diff.is_zero():
        return Verified()
    return Refuted(diff, find_witness(diff, ctx))


def check_invariant(loop: A.While) -> "Verified | Refuted":
    """Check that ``loop.invariant`` may replace ``loop``.

    Unrolling: ``I == if (g) {body; I} else {skip}`` on every input.
    Exit: ``I`` leaves no mass on states satisfying ``g``.
    """
    if loop.invariant is None:
        raise ValueError("loop has no invariant")
    inv = tuple(loop.invariant)
    unrolled = (A.IfElse(loop.guard, tuple(loop.body) + inv, (A.Skip(),)),)
    guard_vars = A.event_vars(loop.guard)
    ctx = _context([inv, tuple(loop.body)], guard_vars)
    sop = sop_input(ctx)
    out_inv = transform_program(inv, sop)
    out_unrolled = transform_program(unrolled, sop)
    diff = out_inv.expr - out_unrolled.expr
    if not diff.is_zero():
        return Refuted(diff, find_witness(diff, ctx), "unrolling")
    leak = filter_event(out_inv, loop.guard).expr
    if not leak.is_zero():
        return Refuted(leak, find_witness(leak, ctx), "exit")
    return Verified()


@dataclass
class LoopReport:
    loop: A.While
    verdict: object = field(default=None)


def check_all_invariants(program) -> List[LoopReport]:
    """Verdict for every loop in ``program`` (nested ones included)."""
    from .errors import InvariantRefuted
    out = []
    for s in A.walk(_stmts(program)):
        if isinstance(s, A.While):
            try:
                v = check_invariant(s)
            except InvariantRefuted as exc:
                # a nested loop inside the body failed first
                v = exc.verdict
            out.append(LoopReport(s, v))
    return out
