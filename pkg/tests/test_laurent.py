import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mahlerzeta import (
    LaurentPolynomial,
    LaurentSyntaxError,
    eval_laurent,
    format_laurent,
    parse_laurent,
)


# --------------------------------------------------------------------------
# parsing

def test_parse_three_variable_sum():
    poly = parse_laurent("X1 + X2 + 1")
    assert poly.n_vars == 2
    assert poly.terms == {(1, 0): 1, (0, 1): 1, (0, 0): 1}


def test_parse_negative_exponent():
    poly = parse_laurent("X1 - X1^-1 + 3")
    assert poly.terms == {(1,): 1, (-1,): -1, (0,): 3}


def test_parse_merges_like_terms():
    poly = parse_laurent("X1 + X1 + 2*X1")
    assert poly.terms == {(1,): 4}


def test_parse_rational_and_decimal_coefficients():
    poly = parse_laurent("3/4*X1 + 0.25*X2^-2")
    assert poly.terms == {(1, 0): 0.75, (0, -2): 0.25}


def test_parse_exponent_accumulates_within_term():
    poly = parse_laurent("X1*X1^2*X2^-1")
    assert poly.terms == {(3, -1): 1}


def test_parse_whitespace_insensitive():
    assert parse_laurent("X1+X2+1") == parse_laurent("  X1 +  X2+ 1 ")


def test_parse_leading_minus():
    assert parse_laurent("-X1 + 2").terms == {(1,): -1, (0,): 2}


def test_parse_zero_polynomial_rejected():
    with pytest.raises(ValueError, match="zero polynomial"):
        parse_laurent("X1 - X1")


def test_parse_variable_index_zero():
    with pytest.raises(LaurentSyntaxError, match="variable index 0") as err:
        parse_laurent("X0 + 1")
    assert err.value.offset == 1


def test_parse_exponent_overflow():
    with pytest.raises(LaurentSyntaxError, match="exponent magnitude"):
        parse_laurent("X1^1000001")


def test_parse_requires_star():
    with pytest.raises(LaurentSyntaxError) as err:
        parse_laurent("2X1")
    assert err.value.offset == 1
    assert "'+'" in err.value.expected


def test_parse_reports_offset_and_expectations():
    with pytest.raises(LaurentSyntaxError) as err:
        parse_laurent("X1 + ")
    assert err.value.offset == 5
    assert "number" in err.value.expected and "'X'" in err.value.expected


def test_parse_bad_character():
    with pytest.raises(LaurentSyntaxError, match="unexpected character"):
        parse_laurent("X1 + y")


def test_parse_zero_denominator():
    with pytest.raises(LaurentSyntaxError, match="denominator"):
        parse_laurent("1/0*X1")


def test_parse_malformed_decimal():
    with pytest.raises(LaurentSyntaxError, match="decimal"):
        parse_laurent("1.")


# --------------------------------------------------------------------------
# formatting

def test_format_canonical_examples():
    assert format_laurent(LaurentPolynomial(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1})) == "X1 + X2 + 1"
    assert format_laurent(LaurentPolynomial(1, {(-1,): -1, (1,): 1, (0,): 3})) == "X1 - X1^-1 + 3"
    assert format_laurent(LaurentPolynomial(1, {(2,): 1, (1,): 3, (0,): -1})) == "X1^2 + 3*X1 - 1"


def test_format_complex_coefficient_rejected():
    poly = LaurentPolynomial(1, {(1,): 1j})
    with pytest.raises(ValueError, match="complex"):
        format_laurent(poly)


def test_constructor_validation():
    with pytest.raises(ValueError, match="zero polynomial"):
        LaurentPolynomial(1, {(1,): 0.0})
    with pytest.raises(ValueError, match="length"):
        LaurentPolynomial(2, {(1,): 1.0})
    with pytest.raises(ValueError, match="n_vars"):
        LaurentPolynomial(0, {(): 1.0})


@st.composite
def laurent_polynomials(draw):
    n_vars = draw(st.integers(1, 3))
    n_terms = draw(st.integers(1, 6))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.integers(-20, 20)) for _ in range(n_vars))
        num = draw(st.integers(-40, 40).filter(lambda v: v != 0))
        den = draw(st.integers(1, 12))
        terms[exps] = num / den
    return LaurentPolynomial(n_vars, terms)


@given(laurent_polynomials())
@settings(max_examples=200, deadline=None)
def test_format_parse_round_trip(poly):
    assert parse_laurent(format_laurent(poly)) == poly


# --------------------------------------------------------------------------
# evaluation

def test_eval_examples():
    cosine = parse_laurent("X1 + X1^-1")
    assert abs(eval_laurent(cosine, [0.0]) - 2.0) < 1e-15
    assert abs(eval_laurent(cosine, [math.pi / 2])) < 1e-15
    smyth = parse_laurent("X1 + X2 + 1")
    assert abs(eval_laurent(smyth, [2 * math.pi / 3, 4 * math.pi / 3])) < 1e-15


def test_eval_length_mismatch():
    with pytest.raises(ValueError, match="angles"):
        eval_laurent(parse_laurent("X1 + X2"), [0.1])


def test_eval_additivity(rng):
    for _ in range(25):
        terms_p = {(int(e),): complex(c) for e, c in
                   zip(rng.integers(-10, 10, 3), rng.normal(size=3))}
        terms_q = {(int(e),): complex(c) for e, c in
                   zip(rng.integers(-10, 10, 3), rng.normal(size=3))}
        merged = dict(terms_p)
        for key, value in terms_q.items():
            merged[key] = merged.get(key, 0j) + value
        merged = {k: v for k, v in merged.items() if v != 0}
        if not merged:
            continue
        p = LaurentPolynomial(1, terms_p)
        q = LaurentPolynomial(1, terms_q)
        s = LaurentPolynomial(1, merged)
        theta = rng.uniform(0, 2 * math.pi, size=1)
        lhs = eval_laurent(s, theta)
        rhs = eval_laurent(p, theta) + eval_laurent(q, theta)
        assert abs(lhs - rhs) < 1e-13


def test_eval_monomial_homomorphism(rng):
    # multiplying by a monomial multiplies values on the torus
    base = {(2,): 1.5, (-1,): -0.5, (0,): 2.0}
    shift = 4
    shifted = {(e + shift,): c for (e,), c in base.items()}
    p = LaurentPolynomial(1, base)
    q = LaurentPolynomial(1, shifted)
    mono = LaurentPolynomial(1, {(shift,): 1.0})
    for _ in range(10):
        theta = rng.uniform(0, 2 * math.pi, size=1)
        assert abs(eval_laurent(q, theta)
                   - eval_laurent(p, theta) * eval_laurent(mono, theta)) < 1e-13


def test_unit_torus_modulus():
    for a in (-7, -1, 0, 3, 20):
        mono = LaurentPolynomial(1, {(a,): 1.0})
        for theta in np.linspace(0.0, 6.2, 10):
            assert abs(abs(eval_laurent(mono, [theta])) - 1.0) < 1e-14
