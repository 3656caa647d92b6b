from fractions import Fraction

import pytest

from qtele.algebra import FF, PR, Q, X, Y, evaluate, frac
from qtele.dsl import (
    Const, Div, LinForm, Mul, QPoch, QPow, RatPoly, eval_symbolic, eval_term, parse, qpoch,
    shift_quotient, shift_quotients, to_text, validate_domain,
)
from qtele.errors import BadQValue, NonIntegerExponent, PoleAtPoint, TermSyntaxError
from qtele.qshift import qshift

import oracles as o

EX1 = "qpow(k) * (1 + q*qn + q^2*qk) / ((qn+qk+1)*(qn+q*qk+1)*qfac(k+1))"
EX1_R2 = Q * (1 + Q * X + Q**3 * Y) * (X + Y + 1) / (
    (X + Q**2 * Y + 1) * (1 + Q * X + Q**2 * Y) * (1 - Q**2 * Y))


def test_parse_examples():
    t = parse(EX1)
    assert isinstance(t, Div)
    assert parse("1") == Const(FF.one)
    assert parse("qpow(2*n - k + 1)") == QPow(LinForm(2, -1, 1))
    assert parse("qfac(k)") == QPoch(Fraction(1), 1, LinForm(0, 1, 0))
    assert parse("qpoch(-3*q^2; n)") == qpoch(-3 * Q**2, LinForm(1, 0, 0))


def test_rational_parts_fold():
    t = parse("(qn+1)/(qk+2) * 3")
    assert isinstance(t, RatPoly) and t.value == 3 * (X + 1) / (Y + 2)


@pytest.mark.parametrize("bad", [
    "qpow(n", "qfac(n*k)", "qpoch(1+q; n)", "qn^(1/2)", "foo(n)", "1/0", "qpow(n)+qfac(k)", "",
])
def test_syntax_errors(bad):
    with pytest.raises(TermSyntaxError):
        parse(bad)


def test_non_integer_exponent():
    with pytest.raises(NonIntegerExponent):
        parse("qfac(k)^(1/2)")


def test_error_has_position():
    with pytest.raises(TermSyntaxError) as err:
        parse("qpow(k) * bogus")
    assert err.value.pos == 10


def test_shift_quotient_examples():
    assert shift_quotient(parse(EX1), "k") == EX1_R2
    assert shift_quotient(parse("qpow(k)"), "k") == Q
    assert shift_quotient(parse("qfac(k)"), "k") == 1 - Q * Y
    assert shift_quotient(parse("qpoch(q^2; 2*k-1)"), "k") == (1 - Q * Y**2) * (1 - Q**2 * Y**2)
    assert shift_quotient(parse("qfac(n-k)"), "k") == 1 / (1 - X / Y)


def test_negative_length_convention():
    t = parse("qfac(k-2)")
    # qfac(-1) = 1/(1 - q^0) is a pole, qfac(-2) = 1/((1-q^-1)(1-q^0)) likewise
    assert eval_term(t, 0, 3, 2) == Fraction(-1)
    with pytest.raises(PoleAtPoint):
        eval_term(t, 0, 1, 2)
    assert eval_symbolic(parse("qpoch(q^3; k-2)"), 0, 0) == 1 / ((1 - Q) * (1 - Q**2))


def test_eval_examples():
    assert eval_term(parse("(3/q)"), 4, 1, 2) == Fraction(3, 2)
    assert eval_term(parse("qfac(k)"), 0, 3, 2) == -21
    assert eval_term(parse(EX1), 0, 0, 2) == Fraction(-7, 12)
    with pytest.raises(BadQValue):
        eval_term(parse("1"), 0, 0, 1)
    with pytest.raises(PoleAtPoint):
        eval_term(parse("1/(1-qn)"), 0, 0, 2)


def test_validate_domain_examples():
    assert validate_domain(parse(EX1)) == []
    warnings = validate_domain(parse("1/(1-qn)"))
    assert warnings and "n=0" in " ".join(warnings)
    assert validate_domain(parse("1/(qn+qk+1)")) == []
    assert validate_domain(parse("qfac(n)/(qfac(k)*qfac(n-k))"))


def test_print_round_trip_examples():
    for text in [EX1, "1", "qpow(2*n-k+1)", "qpoch(-3*q^2;n)", "(3/q)*qfac(k)^2", "qfac(n)/(qfac(k)*qfac(n))"]:
        t = parse(text)
        assert parse(to_text(t)) == t


def _compatible(R1, R2):
    return qshift(R1, "y", 1) * R2 == qshift(R2, "x", 1) * R1


def test_random_terms_properties():
    rnd = o.seeded(21)
    checked = 0
    for _ in range(60):
        t = parse(o.rand_term_text(rnd))
        assert parse(to_text(t)) == t
        sq = shift_quotients(t)
        assert _compatible(sq.R1, sq.R2)
        for n in range(4):
            for k in range(4):
                try:
                    base = eval_term(t, n, k, 2)
                    up_k = eval_term(t, n, k + 1, 2)
                    up_n = eval_term(t, n + 1, k, 2)
                    point = {"q": 2, "x": 2**n, "y": 2**k}
                    r2, r1 = evaluate(sq.R2, point), evaluate(sq.R1, point)
                except (PoleAtPoint, ZeroDivisionError):
                    continue
                assert up_k == r2 * base
                assert up_n == r1 * base
                checked += 1
    assert checked > 400
