"""Relation reports, the degree lemmas and the drop bound."""

import random
from fractions import Fraction

import pytest

from polyaut.autmap import AutWord, Elementary, expand, parse_map
from polyaut.polycore import (
    MINUS_INFINITY,
    Polynomial,
    WeightVector,
    parse_poly,
)
from polyaut.relations import (
    check_degree_lemma,
    check_parachute,
    order_in_R,
    relation_report,
    support_bound_holds,
)
from polyaut.verify import random_polynomial, random_tame_word


def P(text, n):
    return parse_poly(text, n)


ELEM = parse_map("x1 + x2^2\nx2", 2)
NAGATA = parse_map(
    "x1 - 2*x2*(x1*x3+x2^2) - x3*(x1*x3+x2^2)^2\n"
    "x2 + x3*(x1*x3+x2^2)\n"
    "x3",
    3,
)


def test_report_affine_word():
    word = AutWord(2, (Elementary(1, P("3*x2", 2)),))
    report = relation_report(word)
    assert report.principal
    assert report.R.is_zero()
    assert report.ideal.is_zero_ideal()
    assert report.bound_ok


def test_report_elementary_map():
    report = relation_report(ELEM)
    assert tuple(report.d.weights) == (2, 1)
    assert report.principal
    assert report.R == P("x1 - x2^2", 2)
    assert report.deg2_of_R == 2
    assert report.parachute == 1
    assert report.bound_ok


def test_report_nagata():
    report = relation_report(NAGATA)
    assert tuple(report.d.weights) == (5, 3, 1)
    assert report.principal
    assert report.R == P("x2^2 + x1*x3", 3)
    assert report.deg2_of_R == 6
    assert report.parachute + 1 == 7
    assert report.bound_ok


def test_report_json_round_trip():
    report = relation_report(ELEM)
    doc = report.to_dict()
    assert parse_poly(doc["R"].replace("z", "x"), 2) == report.R
    assert [Fraction(s) for s in doc["d"]] == list(report.d.weights)


def test_degree_lemma_on_coordinates():
    report = relation_report(ELEM)
    w1 = WeightVector.standard(2)
    for i, d_i in enumerate(report.d.weights, start=1):
        lhs, rhs, strict, _ = check_degree_lemma(
            ELEM, w1, Polynomial.variable(i, 2), report=report
        )
        assert lhs == rhs == d_i
        assert not strict


def test_degree_lemma_strict_case():
    report = relation_report(ELEM)
    lhs, rhs, strict, in_ideal = check_degree_lemma(
        ELEM, WeightVector.standard(2), P("x1 - x2^2", 2), report=report
    )
    assert (lhs, rhs) == (1, 2)
    assert strict and in_ideal


def test_degree_lemma_inverse_coordinate():
    # Non-affine inverse coordinates compose to degree 1, so their
    # deg2-leading terms are relations.
    g1 = P("x1 - x2^2", 2)  # first coordinate of the inverse map
    report = relation_report(ELEM)
    lhs, rhs, strict, in_ideal = check_degree_lemma(
        ELEM, WeightVector.standard(2), g1, report=report
    )
    assert lhs == 1
    assert in_ideal


def test_degree_lemma_zero_polynomial_not_strict():
    report = relation_report(ELEM)
    lhs, rhs, strict, in_ideal = check_degree_lemma(
        ELEM, WeightVector.standard(2), Polynomial.zero(2), report=report
    )
    assert lhs is MINUS_INFINITY and rhs is MINUS_INFINITY
    assert not strict and not in_ideal


def test_parachute_k0_always_holds():
    assert check_parachute(ELEM, P("x1*x2 - 3", 2), 0)


def test_parachute_worked_example():
    # deg1(P o F) = 1 equals deg1(dP/dx2 o F) + d2 - nabla = 1 + 1 - 1.
    assert check_parachute(ELEM, P("x1 - x2^2", 2), 1, var=2)


def test_parachute_vanishing_derivative():
    assert check_parachute(ELEM, P("x1", 2), 3, var=2)


def test_order_in_R_constructed():
    R = P("x1 - x2^2", 2)
    S = P("x1 + x2", 2)
    d = WeightVector((2, 1))
    p = R ** 3 * S
    # p is d-homogeneous only up to its leading part; use the leading term
    assert order_in_R(p, R, d) >= 3


def test_order_in_R_coprime():
    d = WeightVector((2, 1))
    assert order_in_R(P("x2", 2), P("x1 - x2^2", 2), d) == 0


def test_order_in_R_inverse_coordinate():
    # The non-affine inverse coordinate has order 1 in R, and the drop
    # estimate deg1(g o F) >= k * (deg2(R) - nabla) holds with k = 1.
    R = P("x1 - x2^2", 2)
    d = WeightVector((2, 1))
    k = order_in_R(P("x1 - x2^2", 2), R, d)
    assert k == 1
    assert 1 >= k * (2 - 1)


def test_order_in_R_rejects_units():
    with pytest.raises(ValueError):
        order_in_R(P("x1", 2), Polynomial.constant(2, 2), WeightVector((1, 1)))


def test_degree_bound_on_random_words():
    rng = random.Random(42)
    for _ in range(10):
        word = random_tame_word(rng, 2, max_gens=5, max_coord_deg=10)
        report = relation_report(word)
        assert report.bound_ok
        if report.principal and not report.R.is_zero():
            assert report.deg2_of_R <= report.parachute + 1


def test_plane_inequality_coordinate_exponent():
    # Principal generators of plane relations are z_a - c*z_b^r: the
    # exponent s on the higher-degree side is 1, and s * d2 <= d1 + d2 - 2
    # whenever the word is not affine (d1 >= d2 are the coordinate degrees).
    rng = random.Random(43)
    checked = 0
    while checked < 8:
        word = random_tame_word(rng, 2, max_gens=5, max_coord_deg=10,
                                mode="nonaffine")
        report = relation_report(word)
        if not (report.principal and not report.R.is_zero()):
            continue
        d1, d2 = sorted(report.d.weights, reverse=True)
        s = min(sum(m) for m in report.R.terms)  # exponent of the linear side
        assert s == 1
        assert s * d2 <= d1 + d2 - 2
        checked += 1


def test_support_bound_on_principal_space_words():
    from polyaut.verify import space_corpus_principal

    for word in space_corpus_principal(99, 5):
        report = relation_report(word)
        assert support_bound_holds(report.R, report.d)


def test_lemma_1_2_random_cases():
    rng = random.Random(44)
    for _ in range(6):
        n = rng.choice([2, 3])
        word = random_tame_word(rng, n, max_gens=4, max_addend_deg=3,
                                max_coord_deg=8 if n == 2 else 5)
        report = relation_report(word)
        for _ in range(4):
            p = random_polynomial(rng, n)
            lhs, rhs, strict, in_ideal = check_degree_lemma(
                expand(word), report.w1, p, report=report
            )
            assert lhs <= rhs
            assert strict == in_ideal


def test_parachute_random_cases():
    rng = random.Random(45)
    for _ in range(6):
        n = rng.choice([2, 3])
        word = random_tame_word(rng, n, max_gens=4, max_addend_deg=3,
                                max_coord_deg=8 if n == 2 else 5)
        m = expand(word)
        for _ in range(4):
            p = random_polynomial(rng, n)
            k = rng.randint(0, 3)
            assert check_parachute(m, p, k, var=rng.randint(1, n))
