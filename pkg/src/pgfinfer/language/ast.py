"""Abstract syntax of the probabilistic language.

Nodes are frozen dataclasses. Source positions ride along as ``(line, col)``
but are excluded from equality, so ``parse(render(p)) == p`` compares shape
only. Probabilities and rates are :class:`~pgfinfer.symbolic.Expr` values over
parameter symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

from ..symbolic import Expr

Pos = Optional[Tuple[int, int]]


def _pos():
    return field(default=None, compare=False, repr=False)


# distributions ---------------------------------------------------------------

@dataclass(frozen=True)
class Bernoulli:
    p: Expr
    __hash__ = None


@dataclass(frozen=True)
class Geometric:
    """Number of failures before the first success: P(n) = p (1-p)^n."""
    p: Expr
    __hash__ = None


@dataclass(frozen=True)
class Poisson:
    rate: Expr
    __hash__ = None


@dataclass(frozen=True)
class Binomial:
    n: int
    p: Expr
    __hash__ = None


@dataclass(frozen=True)
class UniformInt:
    a: int
    b: int


@dataclass(frozen=True)
class Dirac:
    k: int


Dist = Union[Bernoulli, Geometric, Poisson, Binomial, UniformInt, Dirac]


# events ----------------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    var: str
    k: int


@dataclass(frozen=True)
class Lt:
    var: str
    k: int


@dataclass(frozen=True)
class ParityOdd:
    var: str


@dataclass(frozen=True)
class ParityEven:
    var: str


@dataclass(frozen=True)
class Not:
    arg: "Event"


@dataclass(frozen=True)
class And:
    left: "Event"
    right: "Event"


@dataclass(frozen=True)
class TrueEvent:
    pass


Event = Union[Eq, Lt, ParityOdd, ParityEven, Not, And, TrueEvent]


def event_vars(g):
    if isinstance(g, (Eq, Lt, ParityOdd, ParityEven)):
        return [g.var]
    if isinstance(g, Not):
        return event_vars(g.arg)
    if isinstance(g, And):
        return event_vars(g.left) + event_vars(g.right)
    return []


def holds(g, state) -> bool:
    """Evaluate ``g`` on a concrete ``{name: value}`` state (missing = 0)."""
    if isinstance(g, Eq):
        return state.get(g.var, 0) == g.k
    if isinstance(g, Lt):
        return state.get(g.var, 0) < g.k
    if isinstance(g, ParityOdd):
        return state.get(g.var, 0) % 2 == 1
    if isinstance(g, ParityEven):
        return state.get(g.var, 0) % 2 == 0
    if isinstance(g, Not):
        return not holds(g.arg, state)
    if isinstance(g, And):
        return holds(g.left, state) and holds(g.right, state)
    if isinstance(g, TrueEvent):
        return True
    raise TypeError(f"not an event: {g!r}")


# statements ------------------------------------------------------------------

@dataclass(frozen=True)
class Skip:
    pos: Pos = _pos()


@dataclass(frozen=True)
class AssignConst:
    var: str
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Increment:
    var: str
    amount: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class AddVar:
    var: str
    other: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Sample:
    var: str
    dist: Dist
    pos: Pos = _pos()
    __hash__ = None


@dataclass(frozen=True)
class SampleAdd:
    var: str
    dist: Dist
    pos: Pos = _pos()
    __hash__ = None


@dataclass(frozen=True)
class Choice:
    prob: Expr
    left: Tuple["Stmt", ...]
    right: Tuple["Stmt", ...]
    pos: Pos = _pos()
    __hash__ = None


@dataclass(frozen=True)
class IfElse:
    guard: Event
    then: Tuple["Stmt", ...]
    orelse: Tuple["Stmt", ...] = (Skip(),)
    pos: Pos = _pos()
    __hash__ = None


@dataclass(frozen=True)
class While:
    guard: Event
    invariant: Optional[Tuple["Stmt", ...]]
    body: Tuple["Stmt", ...]
    pos: Pos = _pos()
    __hash__ = None


@dataclass(frozen=True)
class Observe:
    guard: Event
    pos: Pos = _pos()


Stmt = Union[Skip, AssignConst, Increment, AddVar, Sample, SampleAdd, Choice,
             IfElse, While, Observe]


@dataclass(frozen=True)
class Program:
    statements: Tuple[Stmt, ...]
    parameters: Tuple[str, ...] = ()
    __hash__ = None

    def variables(self):
        """Program variable names in order of first occurrence."""
        seen = {}
        for name in _stmts_vars(self.statements):
            seen.setdefault(name, None)
        return list(seen)


def _stmts_vars(stmts):
    for s in stmts:
        yield from stmt_vars(s)


def stmt_vars(s):
    if isinstance(s, (AssignConst, Increment, Sample, SampleAdd)):
        yield s.var
    elif isinstance(s, AddVar):
        yield s.var
        yield s.other
    elif isinstance(s, Choice):
        yield from _stmts_vars(s.left)
        yield from _stmts_vars(s.right)
    elif isinstance(s, IfElse):
        yield from event_vars(s.guard)
        yield from _stmts_vars(s.then)
        yield from _stmts_vars(s.orelse)
    elif isinstance(s, While):
        yield from event_vars(s.guard)
        yield from _stmts_vars(s.invariant or ())
        yield from _stmts_vars(s.body)
    elif isinstance(s, Observe):
        yield from event_vars(s.guard)


def walk(stmts):
    """Yield every statement, depth first, including nested ones."""
    for s in stmts:
        yield s
        if isinstance(s, Choice):
            yield from walk(s.left)
            yield from walk(s.right)
        elif isinstance(s, IfElse):
            yield from walk(s.then)
            yield from walk(s.orelse)
        elif isinstance(s, While):
            yield from walk(s.invariant or ())
            yield from walk(s.body)


def dist_exprs(d):
    if isinstance(d, (Bernoulli, Geometric, Binomial)):
        return [d.p]
    if isinstance(d, Poisson):
        return [d.rate]
    return []
