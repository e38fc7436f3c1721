from fractions import Fraction

import pytest

from corpus import CORPUS, TELEPHONE, ODD_GEOMETRIC
from pgfinfer.errors import CapExceeded
from pgfinfer.language import parse
from pgfinfer.oracle import ConservationError, StateMap, compare, enumerate_program
from pgfinfer.semantics import Pgf, pvar, transform_program
from pgfinfer.symbolic import ONE, ZERO, const, exp, var

c = var("c")


def test_odd_geometric_unrolled():
    m = enumerate_program(parse(ODD_GEOMETRIC), truncate=10, unroll_cap=20)
    assert m.vars == ("x", "c")
    for n in range(1, 10, 2):
        assert m.mass({"x": 0, "c": n}) == const(Fraction(1, 2 ** (n + 1)))
    for n in range(0, 10, 2):
        assert m.mass({"x": 0, "c": n}) == ZERO
    # the even-count mass that survived the cap was conditioned away
    even = sum((const(Fraction(1, 2 ** (n + 1))) for n in range(0, 20, 2)), ZERO)
    assert m.rejected == even
    assert m.residual == const(Fraction(1, 2 ** 20))
    assert m.total() == ONE


def test_trivial_assignment():
    m = enumerate_program(parse("x := 1"))
    assert m.entries == {(1,): ONE}
    assert m.residual == ZERO


def test_telephone_entry():
    m = enumerate_program(parse(TELEPHONE), truncate=10)
    assert m.mass({"w": 1, "c": 5}) == const(Fraction(8, 105)) * exp(-2)
    # the tail beyond 10 is exact
    assert m.total() == ONE


def test_caps_must_be_positive():
    with pytest.raises(CapExceeded):
        enumerate_program(parse("skip"), truncate=0)
    with pytest.raises(CapExceeded):
        enumerate_program(parse("skip"), unroll_cap=0)


def test_rejects_parameters():
    with pytest.raises(ValueError):
        enumerate_program(parse("{x := 0} [p] {x := 1}"))


def test_compare_examples():
    m = enumerate_program(parse(ODD_GEOMETRIC), truncate=10)
    assert compare(transform_program(parse(ODD_GEOMETRIC)), m, 9).ok
    geo = enumerate_program(parse("c := geometric(1/3)"), truncate=4)
    report = compare(Pgf(1 / (2 - c), (pvar("c"),)), geo, 4)
    first = report.mismatches[0]
    assert first.valuation == {"c": 0}
    assert (first.exact, first.oracle) == (const(1) / 2, const(1) / 3)
    empty = enumerate_program(parse("skip"), StateMap.dirac({"x": 2}))
    assert compare(Pgf(var("x") ** 2, (pvar("x"),)), empty, 3).ok


def test_compare_upto_bounded_by_truncation():
    m = enumerate_program(parse("c := poisson(1)"), truncate=4)
    with pytest.raises(ValueError):
        compare(transform_program(parse("c := poisson(1)")), m, 5)


def test_from_pgf_keeps_tail_in_residual():
    F = Pgf(exp(2 * c - 2), (pvar("c"),))
    sm = StateMap.from_pgf(F, 6)
    assert sm.total() == ONE
    assert sm.mass({"c": 3}) == const(Fraction(8, 6)) * exp(-2)


def test_deterministic():
    a = enumerate_program(parse(CORPUS["counting_loop"]), truncate=8)
    b = enumerate_program(parse(CORPUS["counting_loop"]), truncate=8)
    assert a == b


def test_conservation_violation_detected(monkeypatch):
    from pgfinfer import oracle
    original = oracle._Run.step

    def leaky(self, s, frame):
        return {k: v / 2 for k, v in original(self, s, frame).items()}

    monkeypatch.setattr(oracle._Run, "step", leaky)
    with pytest.raises(ConservationError, match="1:1"):
        enumerate_program(parse("x := x + 1"), check_conservation=True)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_agreement(name):
    p = parse(CORPUS[name])
    m = enumerate_program(p, truncate=16, check_conservation=True)
    report = compare(transform_program(p), m, 16)
    assert report.ok, report.mismatches[:3]
    assert m.total() == ONE
