"""Polynomial core: parsing, arithmetic, weighted degrees, calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from polyaut.polycore import (
    MINUS_INFINITY,
    Polynomial,
    PolyParseError,
    WeightVector,
    compose,
    format_poly,
    homogeneous_component,
    is_homogeneous,
    jacobian,
    leading_term,
    parse_poly,
    partial,
    wdeg,
)


def P(text, n):
    return parse_poly(text, n)


def std(n):
    return WeightVector.standard(n)


# -- parsing and formatting --------------------------------------------------


def test_parse_simple_sum():
    p = P("x1 + x2", 2)
    assert p.terms == {(1, 0): 1, (0, 1): 1}


def test_parse_two_terms_with_powers():
    p = P("x3^2 + 5*x2^3", 3)
    assert p.terms == {(0, 0, 2): 1, (0, 3, 0): 5}


def test_parse_distributes_products():
    p = P("-2*x2*(x1*x3+x2^2)", 3)
    assert p == P("-2*x1*x2*x3 - 2*x2^3", 3)


def test_parse_rational_literals():
    p = P("1/2*x1 - 3/4", 1)
    assert p.coeff((1,)) == Fraction(1, 2)
    assert p.constant_value() == Fraction(-3, 4)


def test_parse_reports_position():
    with pytest.raises(PolyParseError) as err:
        P("x1 + ", 2)
    assert err.value.position == 5


def test_parse_rejects_out_of_range_variable():
    with pytest.raises(PolyParseError):
        P("x3", 2)
    with pytest.raises(PolyParseError):
        P("x0", 2)


def test_parse_multi_digit_variable_indices():
    p = P("x12^2", 12)
    assert p.terms == {(0,) * 11 + (2,): 1}


def test_format_round_trips():
    for text, n in [
        ("x1^2*x2 - 2*x2^3 + 1/2", 2),
        ("-x1 + x2 - 1", 2),
        ("x1*x3^2 - 7/3*x2", 3),
        ("0", 2),
    ]:
        p = P(text, n)
        assert parse_poly(format_poly(p), n) == p


def test_format_zero():
    assert format_poly(Polynomial.zero(2)) == "0"


# -- ring operations ---------------------------------------------------------


def test_product_difference_of_squares():
    assert P("x1+x2", 2) * P("x1-x2", 2) == P("x1^2 - x2^2", 2)


def test_pow_zero_is_one():
    assert P("x1*x2 - 3", 2) ** 0 == Polynomial.constant(1, 2)


def test_scale_by_zero():
    assert (P("x1 - x2^2", 2) * 0).is_zero()


def test_variable_count_mismatch_raises():
    with pytest.raises(ValueError):
        P("x1", 1) + P("x1", 2)


# -- weighted degrees --------------------------------------------------------


def test_wdeg_weighted_example():
    # weights (1, 3): the x2 term dominates x1 + x2
    assert wdeg(P("x1 + x2", 2), WeightVector((1, 3))) == 3


def test_wdeg_zero_polynomial():
    assert wdeg(Polynomial.zero(2), std(2)) is MINUS_INFINITY


def test_wdeg_standard():
    assert wdeg(P("x1^2*x2", 2), std(2)) == 3


def test_minus_infinity_ordering():
    assert MINUS_INFINITY < Fraction(-100)
    assert not (MINUS_INFINITY < MINUS_INFINITY)
    assert MINUS_INFINITY <= MINUS_INFINITY
    assert Fraction(0) > MINUS_INFINITY
    assert MINUS_INFINITY + Fraction(5) is MINUS_INFINITY


def test_leading_term_weighted_example():
    assert leading_term(P("x1 + x2", 2), WeightVector((1, 3))) == P("x2", 2)


def test_leading_term_idempotent_on_homogeneous():
    p = P("x1^3 + x1*x2^2", 2)
    assert leading_term(p, std(2)) == p


def _brute_leading(p, weights):
    """Independent oracle: filter terms at the maximal weighted degree."""
    degs = {m: sum(e * w for e, w in zip(m, weights)) for m in p.terms}
    top = max(degs.values())
    return Polynomial(p.n, {m: c for m, c in p.terms.items() if degs[m] == top})


def test_leading_term_of_nagata_first_coordinate():
    f1 = P("x1 - 2*x2*(x1*x3+x2^2) - x3*(x1*x3+x2^2)^2", 3)
    expected = _brute_leading(f1, (1, 1, 1))
    assert leading_term(f1, std(3)) == expected
    assert expected == P("-(x3*(x1*x3+x2^2)^2)", 3)


# -- calculus ----------------------------------------------------------------


def test_partial_examples():
    assert partial(P("x1 - x2^2", 2), 2) == P("-2*x2", 2)
    assert partial(Polynomial.constant(7, 2), 1).is_zero()
    assert partial(P("x3^2 + x1*x2^2", 3), 3) == P("2*x3", 3)


def test_partial_index_out_of_range():
    with pytest.raises(IndexError):
        partial(P("x1", 2), 3)


def test_compose_projection_and_identity():
    f = [P("x1 + x2^2", 2), P("x2", 2)]
    assert compose(P("x1", 2), f) == f[0]
    p = P("x1^2*x2 - x2", 2)
    ident = [P("x1", 2), P("x2", 2)]
    assert compose(p, ident) == p


def test_compose_inverts_elementary():
    assert compose(P("x1 - x2^2", 2), [P("x1 + x2^2", 2), P("x2", 2)]) == P("x1", 2)


def test_jacobian_identity_and_alternating():
    n = 3
    ident = [Polynomial.variable(i, n) for i in range(1, n + 1)]
    assert jacobian(ident) == Polynomial.constant(1, n)
    assert jacobian([P("x2", 2), P("x1", 2)]) == Polynomial.constant(-1, 2)


def test_jacobian_elementary_map():
    assert jacobian([P("x1 + x2^2", 2), P("x2", 2)]) == Polynomial.constant(1, 2)


def test_jacobian_diagonal_affine():
    assert jacobian([P("2*x1", 2), P("x2", 2)]) == Polynomial.constant(2, 2)


# -- property tests ----------------------------------------------------------


@st.composite
def polynomials(draw, n=2, max_terms=4, max_exp=3, nonzero=False):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_exp) for _ in range(n)]),
            st.fractions(min_value=-9, max_value=9),
            max_size=max_terms,
        )
    )
    p = Polynomial(n, terms)
    if nonzero and p.is_zero():
        p = p + Polynomial.variable(1, n)
    return p


@st.composite
def weight_vectors(draw, n=2):
    ws = draw(st.lists(st.integers(1, 4), min_size=n, max_size=n))
    return WeightVector(tuple(Fraction(w) for w in ws))


@settings(max_examples=60, deadline=None)
@given(polynomials(nonzero=True), polynomials(nonzero=True), weight_vectors())
def test_wdeg_multiplicative(p, q, w):
    assert wdeg(p * q, w) == wdeg(p, w) + wdeg(q, w)


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(), weight_vectors())
def test_wdeg_subadditive(p, q, w):
    dp, dq = wdeg(p, w), wdeg(q, w)
    ds = wdeg(p + q, w)
    assert ds <= max(dp, dq)
    if dp != dq:
        assert ds == max(dp, dq)


@settings(max_examples=60, deadline=None)
@given(polynomials(nonzero=True), polynomials(nonzero=True), weight_vectors())
def test_leading_term_multiplicative(p, q, w):
    assert leading_term(p * q, w) == leading_term(p, w) * leading_term(q, w)


@settings(max_examples=60, deadline=None)
@given(polynomials(nonzero=True), weight_vectors())
def test_leading_term_is_homogeneous(p, w):
    lt = leading_term(p, w)
    assert is_homogeneous(lt, w)
    assert leading_term(lt, w) == lt


@settings(max_examples=60, deadline=None)
@given(polynomials(n=3, nonzero=True), weight_vectors(n=3))
def test_derivative_of_leading_term(p, w):
    # While d(leading)/dx_n is nonzero, it is the leading term of dp/dx_n
    # and the weighted degree drops by exactly w_n.
    lt = leading_term(p, w)
    dlt = partial(lt, 3)
    if dlt.is_zero():
        return
    dp = partial(p, 3)
    assert leading_term(dp, w) == dlt
    assert wdeg(dp, w) == wdeg(p, w) - w[3]


@settings(max_examples=40, deadline=None)
@given(
    st.lists(polynomials(n=2, max_terms=3, max_exp=2), min_size=2, max_size=2),
)
def test_jacobian_degree_bound(ps):
    # Standard-degree bound: deg(j) <= sum deg(P_i) - n.
    j = jacobian(ps)
    if j.is_zero():
        return
    w = WeightVector.standard(2)
    bound = sum((wdeg(p, w) for p in ps), Fraction(0)) - 2
    assert wdeg(j, w) <= bound


@settings(max_examples=60, deadline=None)
@given(polynomials(), weight_vectors())
def test_homogeneous_components_sum(p, w):
    degs = {sum(e * wi for e, wi in zip(m, w.weights)) for m in p.terms}
    total = Polynomial.zero(p.n)
    for d in degs:
        total = total + homogeneous_component(p, w, d)
    assert total == p
