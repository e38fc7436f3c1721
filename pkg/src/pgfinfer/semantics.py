"""PGF distribution-transformer semantics.

A program maps an input PGF (the prior) to an output PGF. Observations filter
mass without renormalizing; queries normalize once at the end. Loops are
replaced by their user-supplied invariant after the invariant is verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Tuple

from .errors import InvariantRefuted, UnsupportedConstruct
from .language import ast as A
from .symbolic import ONE, ZERO, Expr, Symbol, SymbolKind, exp, render
from .symbolic.expr import substitute_all, taylor_coeff

__all__ = ["Pgf", "pvar", "dist_pgf", "filter_event", "transform_stmt",
           "transform_program", "LoopRecord"]


def pvar(name) -> Symbol:
    if isinstance(name, Symbol):
        return name
    return Symbol(name, SymbolKind.PROGRAM_VAR)


def _merge_vars(*groups):
    seen = {}
    for g in groups:
        for v in g:
            seen.setdefault(pvar(v), None)
    return tuple(seen)


@dataclass(frozen=True)
class Pgf:
    """A (sub)distribution over program states as a generating function."""

    expr: Expr
    vars: Tuple[Symbol, ...] = ()
    __hash__ = None

    @staticmethod
    def one(variables=()):
        """Dirac at the all-zero state."""
        return Pgf(ONE, _merge_vars(variables))

    @staticmethod
    def dirac(values):
        """Point mass at ``{name: value}``."""
        e = ONE
        for name, k in values.items():
            e = e * Expr.symbol(pvar(name)) ** k
        return Pgf(e, _merge_vars(values))

    def with_vars(self, variables):
        return Pgf(self.expr, _merge_vars(self.vars, variables))

    def replace(self, expr):
        return Pgf(expr, self.vars)

    def __add__(self, other):
        return Pgf(self.expr + other.expr, _merge_vars(self.vars, other.vars))

    def __sub__(self, other):
        return Pgf(self.expr - other.expr, _merge_vars(self.vars, other.vars))

    def scale(self, c):
        return Pgf(self.expr * c, self.vars)

    def __eq__(self, other):
        if not isinstance(other, Pgf):
            return NotImplemented
        return self.expr == other.expr

    def __str__(self):
        return render(self.expr, self.vars)


def dist_pgf(d, v) -> Expr:
    """Closed-form generating function of ``d`` in the indeterminate ``v``."""
    x = Expr.symbol(pvar(v))
    if isinstance(d, A.Bernoulli):
        return 1 - d.p + d.p * x
    if isinstance(d, A.Geometric):
        return d.p / (1 - (1 - d.p) * x)
    if isinstance(d, A.Poisson):
        return exp(d.rate * x - d.rate)
    if isinstance(d, A.Binomial):
        return (1 - d.p + d.p * x) ** d.n
    if isinstance(d, A.UniformInt):
        total = ZERO
        for k in range(d.a, d.b + 1):
            total = total + x ** k
        return total / (d.b - d.a + 1)
    if isinstance(d, A.Dirac):
        return x ** d.k
    raise TypeError(f"not a distribution: {d!r}")


def dist_pmf(d, n) -> Expr:
    """Probability mass at ``n``; used by the enumerative oracle."""
    if isinstance(d, A.Bernoulli):
        return {0: 1 - d.p, 1: d.p}.get(n, ZERO)
    if isinstance(d, A.Geometric):
        return d.p * (1 - d.p) ** n
    if isinstance(d, A.Poisson):
        f = 1
        for i in range(2, n + 1):
            f *= i
        return exp(-d.rate) * d.rate ** n / f
    if isinstance(d, A.Binomial):
        if n > d.n:
            return ZERO
        return comb(d.n, n) * d.p ** n * (1 - d.p) ** (d.n - n)
    if isinstance(d, A.UniformInt):
        return Expr.const(1) / (d.b - d.a + 1) if d.a <= n <= d.b else ZERO
    if isinstance(d, A.Dirac):
        return ONE if n == d.k else ZERO
    raise TypeError(f"not a distribution: {d!r}")


def dist_support_bound(d):
    """Largest value with positive mass, or None for infinite support."""
    if isinstance(d, A.Bernoulli):
        return 1
    if isinstance(d, A.Binomial):
        return d.n
    if isinstance(d, A.UniformInt):
        return d.b
    if isinstance(d, A.Dirac):
        return d.k
    return None


# filtering ---------------------------------------------------------------------

def _filter(e: Expr, g) -> Expr:
    if isinstance(g, A.TrueEvent):
        return e
    if isinstance(g, A.Eq):
        v = pvar(g.var)
        return Expr.symbol(v) ** g.k * taylor_coeff(e, v, g.k)
    if isinstance(g, A.Lt):
        v = pvar(g.var)
        total = ZERO
        for j in range(g.k):
            total = total + Expr.symbol(v) ** j * taylor_coeff(e, v, j)
        return total
    if isinstance(g, (A.ParityOdd, A.ParityEven)):
        v = pvar(g.var)
        flipped = substitute_all(e, {v: -Expr.symbol(v)})
        return (e - flipped) / 2 if isinstance(g, A.ParityOdd) else (e + flipped) / 2
    if isinstance(g, A.Not):
        return e - _filter(e, g.arg)
    if isinstance(g, A.And):
        return _filter(_filter(e, g.left), g.right)
    raise TypeError(f"not an event: {g!r}")


def filter_event(F: Pgf, g) -> Pgf:
    """Sub-PGF of the mass of ``F`` on states satisfying ``g``."""
    return Pgf(_filter(F.expr, g), _merge_vars(F.vars, A.event_vars(g)))


# transformer -------------------------------------------------------------------

@dataclass
class LoopRecord:
    loop: A.While
    verdict: object


class _Loops:
    """Verifies each loop once per run and hands back its invariant."""

    def __init__(self, log=None):
        self.done = {}
        self.log = log

    def invariant_for(self, w: A.While):
        if id(w) not in self.done:
            if w.invariant is None:
                raise UnsupportedConstruct("while loop without invariant annotation")
            if any(isinstance(s, A.Observe) for s in A.walk(w.body + w.invariant)):
                raise UnsupportedConstruct("observe inside a loop is not supported")
            from .verifier import Refuted, check_invariant
            # loops nested in the body are checked (and logged) first
            for inner in A.walk(w.body):
                if isinstance(inner, A.While):
                    self.invariant_for(inner)
            verdict = check_invariant(w)
            self.done[id(w)] = (w, verdict)
            if self.log is not None:
                self.log.append(LoopRecord(w, verdict))
            if isinstance(verdict, Refuted):
                raise InvariantRefuted(w, verdict)
        return w.invariant


def _run(stmts, e: Expr, loops) -> Expr:
    for s in stmts:
        e = _step(s, e, loops)
    return e


def _step(s, e: Expr, loops) -> Expr:
    if isinstance(s, A.Skip):
        return e
    if isinstance(s, A.AssignConst):
        v = pvar(s.var)
        return Expr.symbol(v) ** s.value * substitute_all(e, {v: ONE})
    if isinstance(s, A.Increment):
        return Expr.symbol(pvar(s.var)) ** s.amount * e
    if isinstance(s, A.AddVar):
        v, w = pvar(s.var), pvar(s.other)
        return substitute_all(e, {w: Expr.symbol(w) * Expr.symbol(v)})
    if isinstance(s, A.Sample):
        v = pvar(s.var)
        return dist_pgf(s.dist, v) * substitute_all(e, {v: ONE})
    if isinstance(s, A.SampleAdd):
        return dist_pgf(s.dist, s.var) * e
    if isinstance(s, A.Choice):
        return s.prob * _run(s.left, e, loops) + (1 - s.prob) * _run(s.right, e, loops)
    if isinstance(s, A.IfElse):
        hit = _filter(e, s.guard)
        return _run(s.then, hit, loops) + _run(s.orelse, e - hit, loops)
    if isinstance(s, A.Observe):
        return _filter(e, s.guard)
    if isinstance(s, A.While):
        return _run(loops.invariant_for(s), e, loops)
    raise TypeError(f"not a statement: {s!r}")


def _stmts(p):
    if isinstance(p, A.Program):
        return p.statements
    if isinstance(p, (list, tuple)):
        return tuple(p)
    return (p,)


def transform_stmt(s, F: Pgf, _loops=None) -> Pgf:
    loops = _loops or _Loops()
    return Pgf(_step(s, F.expr, loops), _merge_vars(F.vars, A.stmt_vars(s)))


def transform_program(p, F: Pgf = None, log=None) -> Pgf:
    """Run ``p`` (Program or statement sequence) on ``F`` (default: Pgf 1).

    Each loop's invariant is verified before use; ``log`` (a list) receives a
    :class:`LoopRecord` per verified loop. Raises :class:`InvariantRefuted`
    on the first refuted loop.
    """
    stmts = _stmts(p)
    F = Pgf.one() if F is None else F
    names = [n for s in stmts for n in A.stmt_vars(s)]
    out = _run(stmts, F.expr, _Loops(log))
    return Pgf(out, _merge_vars(F.vars, names))
