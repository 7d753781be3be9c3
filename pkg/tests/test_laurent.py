from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klr.laurent import ONE, V, V_INV, ZERO, LaurentPoly, MalformedPolynomial

polys = st.dictionaries(st.integers(-6, 6), st.integers(-20, 20), max_size=6).map(LaurentPoly)


def P(text):
    return LaurentPoly.parse(text)


def test_mul_examples():
    assert V * V_INV == ONE
    assert P("v^-1 - v") * P("v^-1 - v") == P("v^-2 - 2 + v^2")
    assert P("1 + v^2") * ZERO == ZERO


def test_bar_examples():
    assert V.bar() == V_INV
    assert P("v^-1 - v").bar() == P("v - v^-1")
    assert P("1 + v^2").bar() == P("1 + v^-2")


def test_eval_examples():
    assert P("v + v^-1").eval(1) == 2
    assert P("1 + v^2").eval(2) == 5
    assert P("v^-2").eval(2) == Fraction(1, 4)
    with pytest.raises(ZeroDivisionError):
        V.eval(0)


def test_to_R_examples():
    assert ONE.to_R(0) == {0: 1}
    assert P("v^-1 - v").to_R(1) == {0: -1, 1: 1}
    with pytest.raises(MalformedPolynomial):
        P("v^2").to_R(0)
    with pytest.raises(MalformedPolynomial):
        P("v").to_R(0)


def test_canonical_form_strips_zeros():
    p = LaurentPoly({0: 0, 3: 2, -1: 0})
    assert p.coeffs == {3: 2}
    assert LaurentPoly({1: 1}) + LaurentPoly({1: -1}) == ZERO
    assert ZERO.coeffs == {}


@pytest.mark.parametrize("text", ["v^-1 + v", "1 + 2*v^2", "-3*v^-2 - v^-1 + 4", "0", "-v"])
def test_render_is_parse_fixed_point(text):
    assert str(P(text)) == text


@pytest.mark.parametrize("bad", ["", "v^", "x", "1++v", "2*"])
def test_parse_rejects(bad):
    with pytest.raises(MalformedPolynomial):
        P(bad)


@given(polys)
def test_text_round_trip(a):
    assert P(str(a)) == a


@given(polys, polys)
def test_bar_is_involutive_homomorphism(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(polys, st.integers(-5, 5))
def test_to_R_round_trip(a, d):
    # keep only exponents compatible with d
    r = LaurentPoly((e, c) for e, c in a.items() if (d - e) % 2 == 0 and e <= d)
    R = r.to_R(d)
    assert all(k >= 0 for k in R)
    back = sum((LaurentPoly.monomial(d - 2 * k, c) for k, c in R.items()), ZERO)
    assert back == r


@given(polys, st.integers(1, 4))
def test_eval_matches_direct_sum(a, t):
    assert a.eval(t) == sum(Fraction(c) * Fraction(t) ** e for e, c in a.items())
