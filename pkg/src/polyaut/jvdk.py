"""Constructive tame decomposition of two-variable polynomial automorphisms.

Every automorphism of the plane is a composition of affine and elementary
maps.  The decomposition here runs the induction on deg(f) + deg(g) behind
that fact: order the pair so deg(f) >= deg(g) (recording a transposition),
then use the key reduction step

    the leading form of f is c times the r-th power of the leading form
    of g, with r = deg(f) / deg(g) an integer,

so f - c*g^r has strictly smaller degree and composing with the elementary
map (x1 - c*x2^r, x2) strictly decreases the degree sum.  The base case is
an affine pair.  For a genuine automorphism the reduction step always
succeeds; its failure on a non-affine pair therefore *disproves*
automorphy, so the procedure doubles as a decision procedure for n = 2 and
failure is returned as a value, not an error.

The first reduction also reads off the relation between the two leading
forms: the relation ideal of a non-affine plane automorphism is generated
by z_a - c * z_b^r, where a is the higher-degree coordinate of the first
step (relation2 cross-checks against the Groebner kernel in the tests).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .autmap import (
    Affine,
    AutWord,
    Elementary,
    PolyMap,
    Transposition,
    expand,
)
from .polycore import (
    MINUS_INFINITY,
    Polynomial,
    WeightVector,
    compose,
    leading_term,
)


@dataclass(frozen=True)
class ReductionStep:
    """One elementary reduction: f -> f - c*g^r (after an optional swap)."""

    swapped: bool
    c: Fraction
    r: int
    degree_sum_before: int
    degree_sum_after: int


@dataclass(frozen=True)
class NotAnAutomorphism:
    """Disproof certificate: the stage that failed and what was observed."""

    stage: str
    detail: str


@dataclass(frozen=True)
class Decomposition:
    word: AutWord
    steps: tuple
    affine_tail: Affine


def _std_deg(p: Polynomial) -> int:
    d = p.total_degree()
    if d is MINUS_INFINITY:
        raise ValueError("zero coordinate")
    return int(d)


def reduce_step(f: Polynomial, g: Polynomial):
    """(c, r) with leading(f) = c * leading(g)^r and r = deg(f)/deg(g),
    or None when no such reduction exists.

    Expects deg(f) >= deg(g) >= 1 under the standard degree and a non-affine
    pair.  c is read off as a single coefficient ratio and then the full
    equality of leading forms is verified, so no root extraction is ever
    attempted.
    """
    w = WeightVector.standard(f.n)
    df, dg = _std_deg(f), _std_deg(g)
    if df % dg != 0:
        return None
    r = df // dg
    fbar = leading_term(f, w)
    gbar_r = leading_term(g, w) ** r
    mono = next(iter(gbar_r.terms))
    num = fbar.coeff(mono)
    den = gbar_r.terms[mono]
    c = num / den
    if c == 0:
        return None
    if fbar == gbar_r * c:
        return c, r
    return None


def decompose2(m: PolyMap) -> Union[Decomposition, NotAnAutomorphism]:
    """Decompose a two-variable map into tame generators, or disprove.

    On success expand(word) equals the input exactly; each recorded step
    strictly decreases deg(f) + deg(g), which is the termination witness.
    """
    if m.n != 2:
        raise ValueError("decompose2 only handles two-variable maps")
    for i, c in enumerate(m.coords, start=1):
        if c.is_zero() or c.is_constant():
            return NotAnAutomorphism(
                "degenerate coordinate", f"coordinate {i} is constant"
            )
    gens: list = []
    steps: list = []
    cur = m
    pending_swap = False
    while True:
        f, g = cur.coords
        df, dg = _std_deg(f), _std_deg(g)
        if df <= 1 and dg <= 1:
            break
        if df < dg:
            gens.append(Transposition(1, 2, 2))
            cur = PolyMap(2, (g, f))
            pending_swap = True
            continue
        if dg < 1:
            return NotAnAutomorphism(
                "degenerate coordinate", "a coordinate degenerated to a constant"
            )
        red = reduce_step(f, g)
        if red is None:
            return NotAnAutomorphism(
                "reduce step",
                f"leading form of degree {df} is not a scalar multiple of the "
                f"degree-{dg} leading form raised to {df}/{dg}",
            )
        c, r = red
        addend = Polynomial.variable(2, 2) ** r * c
        gens.append(Elementary(1, addend))
        new_f = f - (g ** r) * c
        if new_f.is_zero():
            return NotAnAutomorphism(
                "reduce step", "coordinate vanished after reduction (f = c*g^r)"
            )
        steps.append(
            ReductionStep(
                swapped=pending_swap,
                c=c,
                r=r,
                degree_sum_before=df + dg,
                degree_sum_after=_std_deg(new_f) + dg,
            )
        )
        pending_swap = False
        cur = PolyMap(2, (new_f, g))
    # Affine base case: read off the linear part and the shift.
    f, g = cur.coords
    matrix = tuple(
        tuple(coord.coeff(tuple(int(k == j) for k in range(2))) for j in range(2))
        for coord in (f, g)
    )
    shift = tuple(coord.constant_value() for coord in (f, g))
    if matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0] == 0:
        return NotAnAutomorphism(
            "affine base", "linear part of the residual affine map is singular"
        )
    tail = Affine(matrix, shift)
    if not tail.is_identity():
        gens.append(tail)
    word = AutWord(2, tuple(gens))
    if expand(word) != m:
        raise RuntimeError("internal error: decomposition does not recompose")
    return Decomposition(word=word, steps=tuple(steps), affine_tail=tail)


class NotAnAutomorphismError(ValueError):
    def __init__(self, certificate: NotAnAutomorphism):
        super().__init__(f"{certificate.stage}: {certificate.detail}")
        self.certificate = certificate


def relation2(m: PolyMap) -> Polynomial:
    """Generator of the relation ideal of a plane automorphism, from the
    first reduction step: 0 for affine maps, else z_a - c * z_b^r where a is
    the higher-degree coordinate of the first step.

    The result annihilates the leading forms exactly; decompose2 failure
    propagates as NotAnAutomorphismError.
    """
    dec = decompose2(m)
    if isinstance(dec, NotAnAutomorphism):
        raise NotAnAutomorphismError(dec)
    if not dec.steps:
        return Polynomial.zero(2)
    first = dec.steps[0]
    a, b = (2, 1) if first.swapped else (1, 2)
    R = Polynomial.variable(a, 2) - Polynomial.variable(b, 2) ** first.r * first.c
    w = WeightVector.standard(2)
    fbars = [leading_term(c, w) for c in m.coords]
    if not compose(R, fbars).is_zero():
        raise RuntimeError("internal error: relation does not annihilate leading forms")
    return R
