import pytest
from hypothesis import given, settings, strategies as st

from qtele.algebra import FF, PR, Q, X, Y, frac
from qtele.errors import TermSyntaxError
from qtele.textio import parse_poly, parse_ratfun, to_text

q, x, y = PR.gens


@pytest.mark.parametrize("text", [
    "0", "1", "-1", "q", "q^2*y+q*x+1", "(-q^2)/(q^2*x-x+q^2-1)",
    "(q*y+x+1)/(y-q)", "-3*q*x^2*y", "(1)/(q-1)",
])
def test_canonical_round_trip(text):
    assert to_text(parse_ratfun(text)) == text


def test_printing_rules():
    assert to_text(1 + Q * X + Q**2 * Y) == "q^2*y+q*x+1"
    assert to_text(-Q**2 / ((Q**2 - 1) * (X + 1))) == "(-q^2)/(q^2*x-x+q^2-1)"
    assert to_text(FF.one / (1 - Q)) == "(-1)/(q-1)"


def test_parse_accepts_loose_input():
    assert parse_ratfun(" (x + q*y + 1) * (x+1) ") == (X + Q * Y + 1) * (X + 1)
    assert parse_ratfun("q^-2*x") == X / Q**2
    assert parse_ratfun("-(x-1)/(1-x)") == 1
    assert parse_poly("2*(y+1)") == 2 * y + 2


@pytest.mark.parametrize("bad", ["", "x+", "(x", "x)", "z", "x^y", "1/0", "x**2"])
def test_parse_errors(bad):
    with pytest.raises(TermSyntaxError):
        parse_ratfun(bad)


def test_error_position():
    with pytest.raises(TermSyntaxError) as err:
        parse_ratfun("x + q*w")
    assert err.value.pos == 6


def test_parse_poly_rejects_fractions():
    with pytest.raises(TermSyntaxError):
        parse_poly("1/x")


poly = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
    st.integers(-20, 20).filter(bool), min_size=1, max_size=5,
).map(PR.from_dict)


@settings(max_examples=100, deadline=None)
@given(poly, poly)
def test_round_trip_random(n, d):
    f = frac(n) / frac(d)
    text = to_text(f)
    assert parse_ratfun(text) == f
    assert to_text(parse_ratfun(text)) == text
