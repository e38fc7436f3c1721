from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import (TELEPHONE, ODD_GEOMETRIC, dists, events, loop_free_programs,
                    loop_free_programs_with_observe)
from pgfinfer.errors import InvariantRefuted, UnsupportedConstruct
from pgfinfer.language import ast as A
from pgfinfer.language import parse
from pgfinfer.oracle import compare, enumerate_program
from pgfinfer.queries import total_mass
from pgfinfer.semantics import (Pgf, dist_pgf, filter_event, pvar, transform_program,
                                transform_stmt)
from pgfinfer.symbolic import ONE, ZERO, approx_decimal, const, exp, param, var
from pgfinfer.symbolic.expr import substitute_all

c, w, x, y, z = (var(n) for n in "cwxyz")
half = const(1) / 2
PROPS = settings(max_examples=100, deadline=None)


# closed forms ------------------------------------------------------------------

def test_dist_pgf_examples():
    p = param("p")
    assert dist_pgf(A.Poisson(const(6)), "c") == exp(6 * c - 6)
    assert dist_pgf(A.Geometric(half), "c") == 1 / (2 - c)
    assert dist_pgf(A.Bernoulli(p), "x") == 1 - p + p * x
    assert dist_pgf(A.Binomial(2, half), "c") == ((1 + c) / 2) ** 2
    assert dist_pgf(A.UniformInt(1, 3), "c") == (c + c ** 2 + c ** 3) / 3
    assert dist_pgf(A.Dirac(4), "c") == c ** 4


def test_filter_examples():
    F = Pgf(const(5) / 7 * exp(6 * c - 6) + const(2) / 7 * w * exp(2 * c - 2), (pvar("w"), pvar("c")))
    got = filter_event(F, A.Eq("c", 5))
    assert got.expr == c ** 5 * (const(324) / 7 * exp(-6) + const(8) / 105 * w * exp(-2))
    G = Pgf(1 / (2 - c), (pvar("c"),))
    assert filter_event(G, A.ParityOdd("c")).expr == c / (4 - c * c)
    assert filter_event(G, A.ParityEven("c")).expr == 2 / (4 - c * c)
    assert filter_event(G, A.Lt("c", 2)).expr == half + c / 4
    assert filter_event(G, A.TrueEvent()) == G


def test_transform_stmt_examples():
    one = Pgf.one()
    assert transform_stmt(A.Increment("c", 1), one).expr == c
    assert transform_stmt(A.Sample("c", A.Poisson(const(6))), one).expr == exp(6 * c - 6)
    choice = A.Choice(const(5) / 7, (A.AssignConst("w", 0),), (A.AssignConst("w", 1),))
    assert transform_stmt(choice, one).expr == const(5) / 7 + const(2) / 7 * w
    # AddVar substitutes w -> w*v
    F = Pgf(x ** 2 * y ** 3)
    assert transform_stmt(A.AddVar("x", "y"), F).expr == x ** 5 * y ** 3


def test_telephone_before_observe():
    p = parse(TELEPHONE)
    F = transform_program(p.statements[:2])
    assert F.expr == const(5) / 7 * exp(6 * c - 6) + const(2) / 7 * w * exp(2 * c - 2)


def test_odd_geometric_unnormalized():
    log = []
    F = transform_program(parse(ODD_GEOMETRIC), log=log)
    assert F.expr == c / (4 - c * c)
    assert total_mass(F) == const(1) / 3
    assert len(log) == 1 and log[0].verdict


def test_skip_is_identity():
    F = Pgf(exp(2 * c - 2) / (2 - x))
    assert transform_program(parse("skip"), F) == F


def test_observe_zero_mass_gives_zero():
    assert transform_program(parse("c := 0; observe(c = 5)")).expr == ZERO


def test_refuted_invariant_raises():
    src = ODD_GEOMETRIC.replace("geometric(1/2)", "geometric(1/3)")
    with pytest.raises(InvariantRefuted) as info:
        transform_program(parse(src))
    assert info.value.verdict.condition == "unrolling"


def test_observe_under_loop_is_unsupported():
    loop = A.While(A.Eq("x", 1), (A.AssignConst("x", 0),),
                   (A.AssignConst("x", 0), A.Observe(A.Eq("c", 0))))
    with pytest.raises(UnsupportedConstruct):
        transform_program((loop,))
    with pytest.raises(UnsupportedConstruct):
        transform_program((A.While(A.Eq("x", 1), None, (A.AssignConst("x", 0),)),))


def test_nested_loop_in_body():
    src = """
    x := 1;
    while (x = 1) invariant {if (x = 1) {c := c + geometric(1/2); x := 0; y := 0}} {
      y := 1;
      while (y = 1) invariant {if (y = 1) {y := 0}} {y := 0};
      {c := c + 1} [1/2] {x := 0}
    }
    """
    log = []
    F = transform_program(parse(src), log=log)
    assert len(log) == 2 and all(r.verdict for r in log)
    assert F.expr == 1 / (2 - c)
    m = enumerate_program(parse(src), truncate=12, check_conservation=True)
    assert compare(F, m, 12).ok


# random inputs -----------------------------------------------------------------

@st.composite
def input_pgfs(draw):
    """Products of closed-form PGFs in x, y (optionally z) with a random weight."""
    e = ONE
    for v in ("x", "y", "z"):
        if draw(st.booleans()):
            e = e * dist_pgf(draw(dists), v)
    return Pgf(e, (pvar("x"), pvar("y"), pvar("z")))


weights = st.sampled_from([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(2)])


@given(loop_free_programs_with_observe, input_pgfs(), input_pgfs(), weights, weights)
@PROPS
def test_linearity(stmts, F, G, a, b):
    lhs = transform_program(stmts, Pgf(a * F.expr + b * G.expr, F.vars))
    rhs = a * transform_program(stmts, F).expr + b * transform_program(stmts, G).expr
    assert lhs.expr == rhs


@given(loop_free_programs, input_pgfs())
@PROPS
def test_mass_preserved_without_observe(stmts, F):
    assert total_mass(transform_program(stmts, F)) == total_mass(F)


@given(loop_free_programs_with_observe, input_pgfs())
@PROPS
def test_mass_monotone_with_observe(stmts, F):
    lost = total_mass(F) - total_mass(transform_program(stmts, F))
    assert not approx_decimal(lost, {}, 12).startswith("-")


@given(input_pgfs(), events, events)
@PROPS
def test_filter_partition_idempotence_commutation(F, g, h):
    part = filter_event(F, g)
    assert part.expr + filter_event(F, A.Not(g)).expr == F.expr
    assert filter_event(part, g) == part
    assert filter_event(part, h) == filter_event(filter_event(F, h), g)


@given(loop_free_programs_with_observe, input_pgfs())
@PROPS
def test_untouched_variable_commutes(stmts, F):
    # generated programs mention only x and y
    drop = {pvar("z"): ONE}
    lhs = substitute_all(transform_program(stmts, F).expr, drop)
    rhs = transform_program(stmts, Pgf(substitute_all(F.expr, drop), F.vars)).expr
    assert lhs == rhs


def _has_infinite(stmts):
    return any(isinstance(s, (A.Sample, A.SampleAdd))
               and isinstance(s.dist, (A.Geometric, A.Poisson)) for s in A.walk(stmts))


@given(loop_free_programs_with_observe)
@PROPS
def test_agrees_with_oracle(stmts):
    F = transform_program(stmts)
    m = enumerate_program(stmts, truncate=8, check_conservation=True)
    report = compare(F, m, 6)
    if not _has_infinite(stmts):
        assert m.residual.is_zero()
        assert report.ok, report.mismatches[:3]
    else:
        # truncated tails may only remove mass, and never more than the residual
        missing = ZERO
        for mm in report.mismatches:
            gap = mm.exact - mm.oracle
            assert not approx_decimal(gap, {}, 12).startswith("-")
            missing = missing + gap
        assert not approx_decimal(m.residual - missing, {}, 12).startswith("-")
