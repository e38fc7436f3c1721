"""Canonical pretty-printer; ``parse(render_program(p)) == p``."""

from __future__ import annotations

from ..symbolic import render
from . import ast as A

__all__ = ["render_program", "render_stmt", "render_event", "render_dist"]


def render_dist(d) -> str:
    if isinstance(d, A.Bernoulli):
        return f"bernoulli({render(d.p)})"
    if isinstance(d, A.Geometric):
        return f"geometric({render(d.p)})"
    if isinstance(d, A.Poisson):
        return f"poisson({render(d.rate)})"
    if isinstance(d, A.Binomial):
        return f"binomial({d.n}, {render(d.p)})"
    if isinstance(d, A.UniformInt):
        return f"uniform({d.a}, {d.b})"
    if isinstance(d, A.Dirac):
        return f"dirac({d.k})"
    raise TypeError(f"not a distribution: {d!r}")


def render_event(g) -> str:
    if isinstance(g, A.Eq):
        return f"{g.var} = {g.k}"
    if isinstance(g, A.Lt):
        return f"{g.var} < {g.k}"
    if isinstance(g, A.ParityOdd):
        return f"{g.var} % 2 = 1"
    if isinstance(g, A.ParityEven):
        return f"{g.var} % 2 = 0"
    if isinstance(g, A.TrueEvent):
        return "true"
    if isinstance(g, A.Not):
        inner = render_event(g.arg)
        if not isinstance(g.arg, (A.Not, A.TrueEvent)):
            inner = f"({inner})"
        return f"not {inner}"
    if isinstance(g, A.And):
        right = render_event(g.right)
        if isinstance(g.right, A.And):
            right = f"({right})"
        return f"{render_event(g.left)} and {right}"
    raise TypeError(f"not an event: {g!r}")


def _block(stmts) -> str:
    return "{" + "; ".join(render_stmt(s) for s in stmts) + "}"


def render_stmt(s) -> str:
    if isinstance(s, A.Skip):
        return "skip"
    if isinstance(s, A.AssignConst):
        return f"{s.var} := {s.value}"
    if isinstance(s, A.Increment):
        return f"{s.var} := {s.var} + {s.amount}"
    if isinstance(s, A.AddVar):
        return f"{s.var} := {s.var} + {s.other}"
    if isinstance(s, A.Sample):
        return f"{s.var} := {render_dist(s.dist)}"
    if isinstance(s, A.SampleAdd):
        return f"{s.var} := {s.var} + {render_dist(s.dist)}"
    if isinstance(s, A.Choice):
        return f"{_block(s.left)} [{render(s.prob)}] {_block(s.right)}"
    if isinstance(s, A.IfElse):
        text = f"if ({render_event(s.guard)}) {_block(s.then)}"
        if tuple(s.orelse) != (A.Skip(),):
            text += f" else {_block(s.orelse)}"
        return text
    if isinstance(s, A.While):
        text = f"while ({render_event(s.guard)})"
        if s.invariant is not None:
            text += f" invariant {_block(s.invariant)}"
        return text + f" {_block(s.body)}"
    if isinstance(s, A.Observe):
        return f"observe({render_event(s.guard)})"
    raise TypeError(f"not a statement: {s!r}")


def render_program(p: A.Program) -> str:
    lines = []
    if p.parameters:
        lines.append("param " + ", ".join(p.parameters) + ";")
    body = [render_stmt(s) for s in p.statements]
    lines.append(";\n".join(body))
    return "\n".join(lines) + "\n"
