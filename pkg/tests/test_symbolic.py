from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import expressions, polynomials
from pgfinfer.errors import (DivisionByZero, EvaluationPole, MissingAssignment,
                             NonPolynomialExpArgument, PoleAtOrigin)
from pgfinfer.symbolic import (ONE, ZERO, Expr, Symbol, SymbolKind, approx_decimal, arith,
                               const, differentiate, equal, exp, param, parse_expr, render,
                               substitute, substitute_all, taylor_box, taylor_coeff,
                               taylor_coeffs, var)

c, w, x = var("c"), var("w"), var("x")
C = Symbol("c", SymbolKind.PROGRAM_VAR)
W = Symbol("w", SymbolKind.PROGRAM_VAR)
lam = param("lam")


# construction and canonical form ---------------------------------------------

def test_arith_examples():
    assert arith("div", ONE, arith("sub", const(2), c)) == 1 / (2 - c)
    assert render(1 / (2 - c)) == "1/(2 - c)"
    assert exp(-6) * exp(6 * c) == exp(6 * c - 6)
    assert render(exp(-6) * exp(6 * c)) == "exp(6*c - 6)"
    assert (1 / (2 - c) - 1 / (2 - c)).is_zero()


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        c / (c - c)
    with pytest.raises(ZeroDivisionError):
        arith("div", ONE, ZERO)


def test_negative_powers():
    assert (2 - c) ** -2 == 1 / ((2 - c) * (2 - c))
    with pytest.raises(DivisionByZero):
        ZERO ** -1


def test_gcd_reduction():
    e = (c * c - 4) / (c - 2)
    assert e.is_polynomial()
    assert render(e) == "2 + c"
    # the common exp factor is shifted to the numerator
    e = (3 * exp(4)) / (exp(4) + exp(4) * c)
    assert render(e) == "3/(1 + c)"


def test_denominator_normalized_positive():
    e = 1 / (c - 2)
    assert render(e) == "-1/(2 - c)"
    assert e == -1 / (2 - c)


def test_exp_law_and_zero():
    assert exp(0) == ONE
    assert exp(3 * c) * exp(3 * c - 6) == exp(6 * c - 6)
    assert exp(c) ** 3 == exp(3 * c)
    assert exp(c) ** -1 == exp(-c)


def test_exp_of_rational_rejected():
    with pytest.raises(NonPolynomialExpArgument):
        exp(1 / (1 - c))


def test_equal_examples():
    assert equal(1 / (2 - c), const(Fraction(1, 2)) / (1 - c / 2))
    assert equal(exp(3 * c) * exp(3 * c - 6), exp(6 * c - 6))
    assert not equal(1 / (2 - c), 1 / (2 + c))
    # distinct atoms are independent
    assert exp(c) != exp(2 * c)


def test_telephone_normal_form():
    num = const(Fraction(324, 7)) * exp(-6)
    den = num + const(Fraction(8, 105)) * exp(-2)
    e = num / den
    assert render(e) == "1215/(1215 + 2*exp(4))"
    assert e == const(1215) / (1215 + 2 * exp(4))


# substitution ----------------------------------------------------------------

def test_substitute_examples():
    assert substitute(1 / (2 - c), C, -c) == 1 / (2 + c)
    assert substitute(exp(6 * c - 6), C, ONE) == ONE
    assert substitute(w * exp(2 * c - 2), W, ONE) == exp(2 * c - 2)


def test_substitute_rational_into_exp_rejected():
    with pytest.raises(NonPolynomialExpArgument):
        substitute(exp(c), C, 1 / (1 - w))


def test_substitute_simultaneous():
    e = c + 2 * w
    assert substitute_all(e, {C: w, W: c}) == w + 2 * c


def test_substitute_pole():
    with pytest.raises(EvaluationPole):
        substitute(1 / (1 - c), C, ONE)


# differentiation -------------------------------------------------------------

def test_differentiate_examples():
    assert differentiate(1 / (2 - c), C) == 1 / (2 - c) ** 2
    assert differentiate(exp(6 * c - 6), C) == 6 * exp(6 * c - 6)
    d = differentiate(c / (4 - c * c), C)
    assert d == (4 + c * c) / (4 - c * c) ** 2


def test_derivative_against_finite_difference():
    f = c / (4 - c * c)
    d = differentiate(f, C)
    at = {C: Fraction(1, 2)}
    with mpmath.workdps(40):
        exact = mpmath.mpf(approx_decimal(d, at, 30))
        fd = mpmath.diff(lambda t: t / (4 - t * t), mpmath.mpf(1) / 2)
        assert abs(exact - fd) < mpmath.mpf(10) ** -25


# Taylor coefficients ---------------------------------------------------------

def test_taylor_coeff_examples():
    assert taylor_coeff(1 / (2 - c), C, 3) == const(Fraction(1, 16))
    assert taylor_coeff(exp(6 * c - 6), C, 5) == const(Fraction(324, 5)) * exp(-6)
    assert taylor_coeff(c / (4 - c * c), C, 0).is_zero()


def test_taylor_coeffs_against_series():
    # 1/(2-c) = sum c^n / 2^(n+1)
    got = taylor_coeffs(1 / (2 - c), C, 10)
    assert got == [const(Fraction(1, 2 ** (n + 1))) for n in range(11)]


def test_poisson_coefficients_against_factorials():
    got = taylor_coeffs(exp(6 * c - 6), C, 8)
    for n, g in enumerate(got):
        assert g == const(Fraction(6 ** n, factorial(n))) * exp(-6)


def test_taylor_coeff_keeps_other_symbols():
    e = (5 * exp(6 * c - 6) + 2 * w * exp(2 * c - 2)) / 7
    got = taylor_coeff(e, C, 5)
    assert got == const(Fraction(324, 7)) * exp(-6) + const(Fraction(8, 105)) * w * exp(-2)


def test_pole_at_origin():
    with pytest.raises(PoleAtOrigin):
        taylor_coeff(1 / c, C, 0)


def test_taylor_box_matches_taylor_coeff():
    e = exp(2 * c + w - 3) / (2 - c * w)
    box = taylor_box(e, [C, W], 4)
    for i in range(5):
        for j in range(5):
            ref = taylor_coeff(taylor_coeff(e, C, i), W, j)
            assert box.get((i, j), ZERO) == ref


# decimal approximation -------------------------------------------------------

def test_approx_examples():
    assert approx_decimal(exp(0), {}, 5) == "1.0000"
    assert approx_decimal(const(Fraction(1, 3)), {}, 5) == "0.33333"


def test_telephone_decimal_is_certified():
    e = const(1215) / (1215 + 2 * exp(4))
    with mpmath.workdps(50):
        ref = mpmath.mpf(1215) / (1215 + 2 * mpmath.e ** 4)
        assert approx_decimal(e, {}, 4) == "0.9175"
        assert approx_decimal(e, {}, 12) == mpmath.nstr(ref, 12)
        assert abs(mpmath.mpf(approx_decimal(e, {}, 30)) - ref) < mpmath.mpf(10) ** -29


def test_approx_with_assignment():
    assert approx_decimal(lam * exp(lam), {lam.free_symbols().pop(): Fraction(1)}, 6) == "2.71828"


def test_approx_errors():
    with pytest.raises(MissingAssignment):
        approx_decimal(c + 1, {}, 3)
    with pytest.raises(EvaluationPole):
        approx_decimal(1 / (1 - c), {C: Fraction(1)}, 3)


@given(st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6),
       st.integers(1, 20))
@settings(max_examples=150, deadline=None)
def test_approx_rational_matches_decimal_rounding(q, digits):
    from decimal import ROUND_HALF_EVEN, Context, Decimal
    got = approx_decimal(const(q), {}, digits)
    if q == 0:
        return
    ctx = Context(prec=digits, rounding=ROUND_HALF_EVEN)
    ref = ctx.divide(Decimal(q.numerator), Decimal(q.denominator))
    assert Decimal(got) == ref
    # always fixed notation, never an exponent
    assert "e" not in got.lower()
    if abs(ref) < 10 ** (digits - 1):
        assert len(got.lstrip("-").replace(".", "").lstrip("0")) == digits


# text round trip -------------------------------------------------------------

def test_render_parse_round_trip_examples():
    for e in [1 / (2 - c), 3 * c / (4 - c * c), exp(6 * c - 6) * 5 / 7 + w * exp(2 * c - 2) * 2 / 7,
              const(1215) / (1215 + 2 * exp(4)), lam * c - 1]:
        text = render(e)
        back = parse_expr(text, {"lam": SymbolKind.PARAMETER})
        assert back == e


# properties --------------------------------------------------------------------

PROPS = settings(max_examples=100, deadline=None)


@given(expressions(), expressions(), expressions())
@PROPS
def test_equal_is_an_equivalence(a, b, e):
    assert a == a
    assert (a == b) == (b == a)
    if a == b and b == e:
        assert a == e
    assert a + b - b == a


@given(expressions())
@PROPS
def test_substitute_identity(e):
    assert substitute(e, C, c) == e


@given(expressions(), expressions(), st.fractions(-3, 3, max_denominator=5),
       st.fractions(-3, 3, max_denominator=5))
@PROPS
def test_derivative_linear(f, g, a, b):
    lhs = differentiate(a * f + b * g, C)
    assert lhs == a * differentiate(f, C) + b * differentiate(g, C)


@given(expressions(), expressions())
@PROPS
def test_product_rule(f, g):
    assert differentiate(f * g, C) == differentiate(f, C) * g + f * differentiate(g, C)


@given(expressions(), expressions(), st.integers(0, 6))
@PROPS
def test_coefficient_convolution(f, g, k):
    lhs = taylor_coeff(f * g, C, k)
    rhs = ZERO
    fs, gs = taylor_coeffs(f, C, k), taylor_coeffs(g, C, k)
    for i in range(k + 1):
        rhs = rhs + fs[i] * gs[k - i]
    assert lhs == rhs


@given(polynomials(), polynomials())
@PROPS
def test_exp_law(P, Q):
    assert exp(P) * exp(Q) == exp(P + Q)
    assert exp(P) / exp(Q) == exp(P - Q)


@given(expressions())
@PROPS
def test_render_parse_round_trip(e):
    assert parse_expr(render(e), {"p": SymbolKind.PARAMETER}) == e
