"""Buchberger engine, kernels of ring maps, and the graded oracle."""

import random
from fractions import Fraction

import pytest

from polyaut.groebner import (
    GradedLex,
    ResourceCapExceeded,
    buchberger,
    divides_poly,
    divmod_single,
    graded_kernel_oracle,
    is_principal,
    kernel_ideal,
    normal_form,
    s_polynomial,
    span_contains,
)
from polyaut.polycore import (
    Polynomial,
    WeightVector,
    compose,
    is_homogeneous,
    leading_term,
    parse_poly,
    wdeg,
)
from polyaut.verify import random_polynomial


def P(text, n):
    return parse_poly(text, n)


# -- normal form and division ------------------------------------------------


def test_normal_form_self():
    r = P("x1 - x2^2", 2)
    basis = buchberger([r], GradedLex())
    assert normal_form(r, basis).is_zero()


def test_normal_form_unit():
    basis = buchberger([P("x1", 2)], GradedLex())
    assert normal_form(Polynomial.constant(1, 2), basis) == Polynomial.constant(1, 2)


def test_normal_form_divisible():
    basis = buchberger([P("x1 - x2^2", 2)], GradedLex())
    assert normal_form(P("x1^2 - x2^4", 2), basis).is_zero()


def test_divmod_single_exact_and_inexact():
    a = P("x1^2 - x2^4", 2)
    b = P("x1 - x2^2", 2)
    q, r = divmod_single(a, b)
    assert r.is_zero() and q * b == a
    assert not divides_poly(P("x1", 2), P("x2", 2))


# -- buchberger --------------------------------------------------------------


def test_buchberger_zero_input():
    basis = buchberger([Polynomial.zero(2)], GradedLex())
    assert basis.is_zero_ideal()


def test_buchberger_two_reductions():
    basis = buchberger([P("x1 - x2^2", 2), P("x2", 2)], GradedLex())
    assert set(basis.gens) == {P("x1", 2), P("x2", 2)}


def test_buchberger_principal_input_is_monic_singleton():
    basis = buchberger([P("6*x1^2 - 4*x2", 2)], GradedLex())
    assert len(basis) == 1
    assert basis.gens[0] == P("x1^2 - 2/3*x2", 2)


def test_buchberger_s_polynomials_reduce_to_zero():
    rng = random.Random(31)
    for _ in range(6):
        gens = [random_polynomial(rng, 2, max_terms=3, max_deg=3, coeff_bound=4)
                for _ in range(2)]
        basis = buchberger(gens, GradedLex())
        for i in range(len(basis.gens)):
            for j in range(i + 1, len(basis.gens)):
                s = s_polynomial(basis.gens[i], basis.gens[j], basis.order)
                assert normal_form(s, basis).is_zero()


def test_buchberger_resource_cap():
    gens = [
        P("x1^3 - 2*x1*x2", 2),
        P("x1^2*x2 - 2*x2^2 + x1", 2),
    ]
    with pytest.raises(ResourceCapExceeded):
        buchberger(gens, GradedLex(), pair_cap=1)


def test_is_principal_cases():
    # Monic for graded lex: x2^2 outranks x1, so the generator flips sign.
    basis = buchberger([P("x1 - x2^2", 2)], GradedLex())
    flag, gen = is_principal(basis)
    assert flag and gen == P("x2^2 - x1", 2)
    empty = buchberger([Polynomial.zero(2)], GradedLex())
    flag, gen = is_principal(empty)
    assert flag and gen.is_zero()
    two = buchberger([P("x1", 2), P("x2", 2)], GradedLex())
    flag, gens = is_principal(two)
    assert not flag and len(gens) == 2


# -- kernel ideals -----------------------------------------------------------


def test_kernel_of_affine_leading_terms_is_zero():
    # Leading terms of an affine map are independent linear forms.
    images = [P("x1 + x2", 2), P("x2", 2)]
    basis = kernel_ideal(images, WeightVector((1, 1)))
    assert basis.is_zero_ideal()


def test_kernel_elementary_example():
    images = [P("x2^2", 2), P("x2", 2)]
    basis = kernel_ideal(images, WeightVector((2, 1)))
    assert basis.gens == (P("x1 - x2^2", 2),)


NAGATA_LEADING = [
    "-x1^2*x3^3 - 2*x1*x2^2*x3^2 - x2^4*x3",
    "x1*x3^2 + x2^2*x3",
    "x3",
]


def test_kernel_nagata_example():
    images = [P(t, 3) for t in NAGATA_LEADING]
    d = WeightVector((5, 3, 1))
    basis = kernel_ideal(images, d)
    assert basis.gens == (P("x2^2 + x1*x3", 3),)


def test_kernel_generators_annihilate_images():
    rng = random.Random(77)
    for _ in range(5):
        images = [
            random_polynomial(rng, 2, max_terms=2, max_deg=3, coeff_bound=3)
            for _ in range(2)
        ]
        w = WeightVector.standard(2)
        images = [leading_term(p, w) for p in images]
        d = WeightVector(tuple(max(Fraction(1), wdeg(p, w)) for p in images))
        basis = kernel_ideal(images, d)
        for g in basis.gens:
            assert compose(g, images).is_zero()


def test_kernel_generators_are_graded():
    images = [P(t, 3) for t in NAGATA_LEADING]
    d = WeightVector((5, 3, 1))
    basis = kernel_ideal(images, d)
    for g in basis.gens:
        assert is_homogeneous(g, d)


# -- graded oracle -----------------------------------------------------------


def test_oracle_affine_images_empty():
    images = [P("x1 + x2", 2), P("x2", 2)]
    assert graded_kernel_oracle(images, WeightVector((1, 1)), 4) == []


def test_oracle_elementary_example():
    images = [P("x2^2", 2), P("x2", 2)]
    found = graded_kernel_oracle(images, WeightVector((2, 1)), 2)
    assert found == [P("x1 - x2^2", 2)]


def test_oracle_nagata_example():
    images = [P(t, 3) for t in NAGATA_LEADING]
    d = WeightVector((5, 3, 1))
    found = graded_kernel_oracle(images, d, 6)
    assert found == [P("x2^2 + x1*x3", 3)]


def test_oracle_solutions_vanish_on_images():
    rng = random.Random(5)
    for _ in range(5):
        w = WeightVector.standard(2)
        images = [
            leading_term(random_polynomial(rng, 2, max_terms=3, max_deg=3), w)
            for _ in range(2)
        ]
        d = WeightVector(tuple(max(Fraction(1), wdeg(p, w)) for p in images))
        for g in graded_kernel_oracle(images, d, 6):
            assert compose(g, images).is_zero()


def test_oracle_and_kernel_agree_on_fixed_instances():
    for images, d, dmax in [
        ([P("x2^2", 2), P("x2", 2)], WeightVector((2, 1)), 2),
        ([P(t, 3) for t in NAGATA_LEADING], WeightVector((5, 3, 1)), 7),
    ]:
        basis = kernel_ideal(images, d)
        oracle = graded_kernel_oracle(images, d, dmax)
        for g in oracle:
            assert normal_form(g, basis).is_zero()
        low = [g for g in basis.gens if wdeg(g, d) <= dmax]
        for g in low:
            assert span_contains(oracle, g)


def test_span_contains_basic():
    vs = [P("x1 + x2", 2), P("x2", 2)]
    assert span_contains(vs, P("x1", 2))
    assert span_contains(vs, P("2*x1 + 5*x2", 2))
    assert not span_contains(vs, P("x1^2", 2))


def _naive_buchberger(gens, order):
    """Criteria-free reference: process every pair until stable."""
    from polyaut.groebner import _reduce_basis, content_normalize

    G = [content_normalize(g) for g in gens if not g.is_zero()]
    if not G:
        return buchberger(gens, order)
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    while pairs:
        i, j = pairs.pop()
        rem = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if not rem.is_zero():
            G.append(content_normalize(rem))
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))
    return _reduce_basis(G, order, G[0].n)


def test_buchberger_matches_criteria_free_reference():
    # The reduced Groebner basis is unique, so the optimized engine must
    # agree exactly with a pair-by-pair reference run.
    rng = random.Random(555)
    for trial in range(12):
        n = rng.choice([2, 3])
        gens = [
            random_polynomial(rng, n, max_terms=3, max_deg=3, coeff_bound=4)
            for _ in range(rng.randint(1, 3))
        ]
        order = GradedLex()
        fast = buchberger(gens, order)
        slow = _naive_buchberger(gens, order)
        assert fast.gens == slow.gens, f"trial {trial}"


def test_kernel_and_oracle_agree_on_arbitrary_graded_images():
    # The dual route holds for any weighted homogeneous images, not just
    # leading terms of automorphisms.
    rng = random.Random(556)
    checked = 0
    while checked < 8:
        n = rng.choice([2, 3])
        w = WeightVector.standard(n)
        images = []
        for _ in range(n):
            p = random_polynomial(rng, n, max_terms=3, max_deg=3, coeff_bound=3)
            images.append(leading_term(p, w))
        if any(im.is_constant() for im in images):
            continue
        d = WeightVector(tuple(wdeg(im, w) for im in images))
        dmax = d.total()
        basis = kernel_ideal(images, d)
        oracle = graded_kernel_oracle(images, d, dmax)
        for g in oracle:
            assert normal_form(g, basis).is_zero()
        for g in basis.gens:
            if wdeg(g, d) <= dmax:
                assert span_contains(oracle, g)
        checked += 1
