"""Truncated enumerative interpreter used to cross-check the PGF engine.

States are tuples of naturals; masses are exact :class:`Expr` constants
(rationals times constant exponentials), so agreement with the engine is a
canonical-equality test. Mass that the enumeration cannot represent goes to
``residual`` (tails of infinite-support draws beyond the truncation bound,
loop iterations past the unroll cap); mass removed by ``observe`` goes to
``rejected``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import CapExceeded, PgfError
from .language import ast as A
from .semantics import Pgf, _stmts, dist_pmf, dist_support_bound, pvar
from .symbolic import ONE, ZERO, Expr, substitute_all, taylor_box

__all__ = ["StateMap", "enumerate_program", "compare", "ComparisonReport",
           "Mismatch", "ConservationError"]


class ConservationError(PgfError, AssertionError):
    pass


@dataclass
class StateMap:
    vars: Tuple[str, ...]
    entries: Dict[Tuple[int, ...], Expr] = field(default_factory=dict)
    residual: Expr = ZERO
    rejected: Expr = ZERO
    truncate: Optional[int] = None

    @staticmethod
    def dirac(values=None, variables=()):
        values = dict(values or {})
        names = tuple(dict.fromkeys(list(variables) + list(values)))
        return StateMap(names, {tuple(values.get(n, 0) for n in names): ONE})

    @staticmethod
    def from_pgf(F: Pgf, truncate: int):
        """Coefficients of ``F`` on ``[0, truncate]^n``; the rest becomes residual."""
        names = tuple(v.name for v in F.vars)
        entries = taylor_box(F.expr, list(F.vars), truncate)
        if any(not m.is_constant() for m in entries.values()):
            raise ValueError("the oracle only handles parameter-free inputs")
        full = substitute_all(F.expr, {v: ONE for v in F.vars})
        sm = StateMap(names, entries, truncate=truncate)
        sm.residual = full - sm.entries_total()
        return sm

    def mass(self, valuation) -> Expr:
        return self.entries.get(tuple(valuation.get(n, 0) for n in self.vars), ZERO)

    def entries_total(self) -> Expr:
        return _sum(self.entries.values())

    def total(self) -> Expr:
        return self.entries_total() + self.residual + self.rejected

    def extend(self, names):
        """Same map over additional variables (all zero)."""
        extra = tuple(n for n in dict.fromkeys(names) if n not in self.vars)
        if not extra:
            return self
        pad = (0,) * len(extra)
        return StateMap(self.vars + extra, {k + pad: v for k, v in self.entries.items()},
                        self.residual, self.rejected, self.truncate)


def _sum(values):
    total = ZERO
    for v in values:
        total = total + v
    return total


def _add(frame, state, mass):
    if mass.is_zero():
        return
    cur = frame.get(state)
    frame[state] = mass if cur is None else cur + mass
    if frame[state].is_zero():
        del frame[state]


class _Run:
    def __init__(self, names, truncate, unroll_cap):
        self.idx = {n: i for i, n in enumerate(names)}
        self.names = names
        self.N = truncate
        self.K = unroll_cap
        self.residual = ZERO
        self.rejected = ZERO
        self._pmf = {}

    def as_dict(self, state):
        return dict(zip(self.names, state))

    def split(self, frame, guard):
        yes, no = {}, {}
        for st, m in frame.items():
            (yes if A.holds(guard, self.as_dict(st)) else no)[st] = m
        return yes, no

    def pmf(self, d):
        key = id(d)
        if key not in self._pmf:
            bound = dist_support_bound(d)
            top = self.N if bound is None else bound
            masses = [dist_pmf(d, n) for n in range(top + 1)]
            tail = ONE - _sum(masses) if bound is None else ZERO
            self._pmf[key] = (masses, tail)
        return self._pmf[key]

    def run(self, stmts, frame):
        for s in stmts:
            frame = self.step(s, frame)
        return frame

    def step(self, s, frame):
        if isinstance(s, A.Skip):
            return frame
        if isinstance(s, (A.AssignConst, A.Increment, A.AddVar)):
            i = self.idx[s.var]
            out = {}
            for st, m in frame.items():
                st = list(st)
                if isinstance(s, A.AssignConst):
                    st[i] = s.value
                elif isinstance(s, A.Increment):
                    st[i] += s.amount
                else:
                    st[i] += st[self.idx[s.other]]
                _add(out, tuple(st), m)
            return out
        if isinstance(s, (A.Sample, A.SampleAdd)):
            i = self.idx[s.var]
            masses, tail = self.pmf(s.dist)
            out = {}
            for st, m in frame.items():
                base = 0 if isinstance(s, A.Sample) else st[i]
                for n, p in enumerate(masses):
                    if p.is_zero():
                        continue
                    new = list(st)
                    new[i] = base + n
                    _add(out, tuple(new), m * p)
                if not tail.is_zero():
                    self.residual = self.residual + m * tail
            return out
        if isinstance(s, A.Choice):
            left = self.run(s.left, {k: v * s.prob for k, v in frame.items()})
            right = self.run(s.right, {k: v * (1 - s.prob) for k, v in frame.items()})
            for k, v in right.items():
                _add(left, k, v)
            return left
        if isinstance(s, A.IfElse):
            yes, no = self.split(frame, s.guard)
            out = self.run(s.then, yes)
            for k, v in self.run(s.orelse, no).items():
                _add(out, k, v)
            return out
        if isinstance(s, A.Observe):
            yes, no = self.split(frame, s.guard)
            self.rejected = self.rejected + _sum(no.values())
            return yes
        if isinstance(s, A.While):
            out = {}
            active = frame
            for _ in range(self.K):
                stay, leave = self.split(active, s.guard)
                for k, v in leave.items():
                    _add(out, k, v)
                active = self.run(s.body, stay) if stay else {}
                if not active:
                    break
            stay, leave = self.split(active, s.guard)
            for k, v in leave.items():
                _add(out, k, v)
            self.residual = self.residual + _sum(stay.values())
            return out
        raise TypeError(f"not a statement: {s!r}")


def _check_parameter_free(stmts):
    for s in A.walk(stmts):
        exprs = [s.prob] if isinstance(s, A.Choice) else (
            A.dist_exprs(s.dist) if isinstance(s, (A.Sample, A.SampleAdd)) else [])
        for e in exprs:
            if e.free_symbols():
                raise ValueError("the oracle only handles parameter-free programs")


def enumerate_program(program, input: StateMap = None, truncate=16, unroll_cap=64,
                      check_conservation=False) -> StateMap:
    """Execute ``program`` on the finite state map ``input``.

    Infinite-support draws are cut at ``truncate``; loops run their body at
    most ``unroll_cap`` times. With ``check_conservation`` the identity
    entries + residual + rejected = initial mass is verified exactly after
    every top-level statement.
    """
    if truncate < 1 or unroll_cap < 1:
        raise CapExceeded("truncation bound and unroll cap must be positive")
    stmts = _stmts(program)
    _check_parameter_free(stmts)
    names = [n for s in stmts for n in A.stmt_vars(s)]
    start = (input or StateMap.dirac()).extend(names)
    run = _Run(start.vars, truncate, unroll_cap)
    run.residual, run.rejected = start.residual, start.rejected
    initial = start.total()
    frame = dict(start.entries)
    for s in stmts:
        frame = run.step(s, frame)
        if check_conservation:
            total = _sum(frame.values()) + run.residual + run.rejected
            if total != initial:
                where = f" at {s.pos[0]}:{s.pos[1]}" if s.pos else ""
                raise ConservationError(f"mass not conserved{where}: {total} != {initial}")
    return StateMap(start.vars, frame, run.residual, run.rejected, truncate)


@dataclass
class Mismatch:
    valuation: Dict[str, int]
    exact: Expr
    oracle: Expr
    __hash__ = None


@dataclass
class ComparisonReport:
    mismatches: List[Mismatch]
    checked: int
    residual: Expr
    rejected: Expr

    @property
    def ok(self):
        return not self.mismatches


def compare(F: Pgf, m: StateMap, upto: int) -> ComparisonReport:
    """Compare PGF coefficients with oracle masses on the box ``[0, upto]``."""
    if m.truncate is not None and upto > m.truncate:
        raise ValueError("upto exceeds the oracle's truncation bound")
    variables = [pvar(n) for n in m.vars]
    coeffs = taylor_box(F.expr, variables, upto)
    mismatches = []
    count = 0
    for idx in itertools.product(range(upto + 1), repeat=len(variables)):
        count += 1
        exact = coeffs.get(idx, ZERO)
        got = m.entries.get(idx, ZERO)
        if exact != got:
            mismatches.append(Mismatch(dict(zip(m.vars, idx)), exact, got))
    return ComparisonReport(mismatches, count, m.residual, m.rejected)
