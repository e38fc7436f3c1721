"""Exception hierarchy shared by all pgfinfer modules."""


class PgfError(Exception):
    """Base class for every error raised by pgfinfer."""


# symbolic core

class SymbolicError(PgfError):
    pass


class DivisionByZero(SymbolicError, ZeroDivisionError):
    pass


class NonPolynomialExpArgument(SymbolicError, ValueError):
    pass


class PoleAtOrigin(SymbolicError):
    pass


class EvaluationPole(SymbolicError, ZeroDivisionError):
    pass


class MissingAssignment(SymbolicError, LookupError):
    pass


class ExprSyntaxError(SymbolicError, ValueError):
    pass


# language

class ParseError(PgfError):
    """Syntax error in a program text.

    ``line`` and ``column`` are 1-based; ``expected`` is the set of token
    descriptions that would have been accepted at that point.
    """

    def __init__(self, message, line, column, expected=()):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        text = f"{line}:{column}: {message}"
        if self.expected:
            text += " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(text)


# semantics / verification / queries

class UnsupportedConstruct(PgfError):
    pass


class InvariantRefuted(PgfError):
    def __init__(self, loop, verdict):
        self.loop = loop
        self.verdict = verdict
        where = f" at {loop.pos[0]}:{loop.pos[1]}" if loop.pos else ""
        super().__init__(f"loop invariant{where} refuted ({verdict.condition} condition)")


class ZeroMassConditioning(PgfError, ZeroDivisionError):
    pass


class CapExceeded(PgfError, ValueError):
    pass
