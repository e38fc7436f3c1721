"""Shared program texts and hypothesis strategies for the test-suite."""

from fractions import Fraction

from hypothesis import strategies as st

from pgfinfer.language import ast as A
from pgfinfer.symbolic import Expr, exp, param, var

TELEPHONE = """\
{w := 0} [5/7] {w := 1};
if (w = 0) {c := poisson(6)} else {c := poisson(2)};
observe(c = 5)
"""

ODD_GEOMETRIC = """\
x := 1;
while (x = 1) invariant {if (x = 1) {c := c + geometric(1/2); x := 0}} {
  {c := c + 1} [1/2] {x := 0}
};
observe(c % 2 = 1)
"""

# Parameter-free programs for oracle agreement. Together they exercise every
# statement form, every event form and every distribution.
CORPUS = {
    "telephone": TELEPHONE,
    "odd_geometric": ODD_GEOMETRIC,
    "bern_binom_addvar": """
        x := bernoulli(1/3); y := binomial(3, 1/4); y := y + x; observe(not y = 0)
    """,
    "uniform_lt_dirac": """
        c := uniform(1, 4);
        if (c < 3) {c := c + 2} else {skip};
        d := dirac(2); d := d + c
    """,
    "geometric_even_and": "n := geometric(1/3); observe(n % 2 = 0 and n < 6)",
    "poisson_shift_true": "c := 2; c := c + poisson(1); observe(true)",
    "choice_nested_if": """
        {a := 1} [1/4] {a := 2; b := bernoulli(1/2); b := b + a};
        if (a = 2 and b % 2 = 1) {b := b + 3}
    """,
    "geometric_loop": """
        x := 1;
        while (x = 1) invariant {if (x = 1) {c := c + geometric(1/3); x := 0}} {
          {x := 0} [1/3] {c := c + 1}
        }
    """,
    "counting_loop": """
        n := 0;
        while (n < 3) invariant {
          if (n = 0) {h := h + binomial(3, 1/2); n := 3}
          else {if (n = 1) {h := h + binomial(2, 1/2); n := 3}
                else {if (n = 2) {h := h + bernoulli(1/2); n := 3}}}
        } {
          n := n + 1; h := h + bernoulli(1/2)
        }
    """,
    "poisson_binomial_observe": """
        x := poisson(3); y := binomial(2, 1/3);
        observe(not (x < 2 and y = 0));
        x := x + y
    """,
    "skip_only": "skip",
    "dirac_choice_uniform": """
        c := dirac(3); {c := c + 1} [1/2] {skip};
        if (true) {d := uniform(0, 2)};
        observe(c % 2 = 0)
    """,
}

# strategies ---------------------------------------------------------------------

VARS = ("x", "y")
PROBS = [Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 4)]


def _c(q):
    return Expr.const(q)


prob = st.sampled_from(PROBS).map(_c)

dists = st.one_of(
    prob.map(A.Bernoulli),
    prob.map(A.Geometric),
    st.sampled_from([1, 2]).map(lambda r: A.Poisson(_c(r))),
    st.builds(A.Binomial, st.integers(1, 2), prob),
    st.integers(0, 2).flatmap(lambda a: st.integers(a, a + 1).map(lambda b: A.UniformInt(a, b))),
    st.integers(0, 2).map(A.Dirac),
)

names = st.sampled_from(VARS)

events = st.recursive(
    st.one_of(
        st.builds(A.Eq, names, st.integers(0, 2)),
        st.builds(A.Lt, names, st.integers(0, 3)),
        names.map(A.ParityOdd),
        names.map(A.ParityEven),
        st.just(A.TrueEvent()),
    ),
    lambda inner: st.one_of(inner.map(A.Not), st.builds(A.And, inner, inner)),
    max_leaves=3,
)


def _simple(allow_observe):
    base = [
        st.just(A.Skip()),
        st.builds(A.AssignConst, names, st.integers(0, 2)),
        st.builds(A.Increment, names, st.integers(1, 2)),
        st.sampled_from([A.AddVar("x", "y"), A.AddVar("y", "x")]),
        st.builds(A.Sample, names, dists),
        st.builds(A.SampleAdd, names, dists),
    ]
    if allow_observe:
        base.append(st.builds(A.Observe, events))
    return st.one_of(*base)


def stmt_lists(allow_observe=False, max_len=3):
    def extend(inner):
        block = st.lists(inner, min_size=1, max_size=2).map(tuple)
        return st.one_of(
            st.builds(A.Choice, prob, block, block),
            st.builds(A.IfElse, events, block, block),
        )
    stmt = st.recursive(_simple(allow_observe), extend, max_leaves=4)
    return st.lists(stmt, min_size=1, max_size=max_len).map(tuple)


loop_free_programs = stmt_lists(allow_observe=False)
loop_free_programs_with_observe = stmt_lists(allow_observe=True)


# random expressions over c, w and parameter p
_c_sym, _w_sym, _p_sym = var("c"), var("w"), param("p")

small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def polynomials(draw, symbols=(_c_sym, _w_sym), max_terms=3, max_deg=2):
    e = Expr.const(0)
    for _ in range(draw(st.integers(0, max_terms))):
        term = Expr.const(draw(small_rationals))
        for s in symbols:
            term = term * s ** draw(st.integers(0, max_deg))
        e = e + term
    return e


@st.composite
def expressions(draw):
    """Rational functions with optional exp atoms, analytic at c = 0."""
    num = draw(polynomials(symbols=(_c_sym, _w_sym, _p_sym)))
    a = draw(st.fractions(min_value=1, max_value=4, max_denominator=3))
    b = draw(st.fractions(min_value=-2, max_value=2, max_denominator=3))
    den = a + b * _c_sym if draw(st.booleans()) else Expr.const(1)
    e = num / den
    if draw(st.booleans()):
        e = e * exp(draw(polynomials(symbols=(_c_sym,), max_terms=2, max_deg=1)))
    return e
