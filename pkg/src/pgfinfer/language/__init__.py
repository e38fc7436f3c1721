from . import ast
from .ast import (AddVar, And, AssignConst, Bernoulli, Binomial, Choice, Dirac,
                  Eq, Geometric, IfElse, Increment, Lt, Not, Observe, ParityEven,
                  ParityOdd, Poisson, Program, Sample, SampleAdd, Skip, TrueEvent,
                  UniformInt, While)
from .parser import parse, parse_dist, parse_guard
from .printer import render_dist, render_event, render_program, render_stmt
from .validate import UNSUPPORTED, Violation, ViolationKind, validate

__all__ = [
    "ast", "parse", "parse_guard", "parse_dist", "validate", "render_program", "render_stmt", "render_event",
    "render_dist", "Violation", "ViolationKind", "UNSUPPORTED",
    "Program", "Skip", "AssignConst", "Increment", "AddVar", "Sample",
    "SampleAdd", "Choice", "IfElse", "While", "Observe",
    "Bernoulli", "Geometric", "Poisson", "Binomial", "UniformInt", "Dirac",
    "Eq", "Lt", "ParityOdd", "ParityEven", "Not", "And", "TrueEvent",
]
