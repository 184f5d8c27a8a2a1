"""The relation-ideal pipeline and its degree inequalities.

relation_report ties the pieces together for one automorphism: the weighted
leading terms of its coordinates, the induced weights d_i = deg1(f_i), the
kernel of z_i -> leading term of f_i (the ideal of relations), its
principality and monic generator R, the drop bound

    nabla = d_1 + .. + d_n - n        (standard deg1)
    deg2(R) <= nabla + 1,

and, for small integer weights, an independent graded-slice oracle shadow
check of the kernel computation.

Relation-ideal elements are returned as n-variable polynomials; read their
variables as z1..zn (the i-th slot stands for the leading term of f_i).
Substituting x_i for z_i identifies them with the x-polynomials the degree
inequalities speak about; the two rings are structurally the same and no
conversion is needed.

The module also exposes the two degree inequalities as testable predicates:

  * check_degree_lemma:  deg1(P o F) <= deg2(P), strict exactly when the
    deg2-leading term of a nonzero P lies in the relation ideal;
  * check_parachute:     deg1(P o F) >= deg1(d^k P/dx^k o F) + k*d - k*nabla,
    the k-fold minoration that prevents composition from dropping degrees
    arbitrarily far;

and order_in_R, the largest k with the deg2-leading term of P in (R^k),
decided by iterated exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .autmap import AutWord, PolyMap, deg2_weights, expand, jacobian_constant
from .groebner import (
    DEFAULT_PAIR_CAP,
    IdealBasis,
    divmod_single,
    graded_kernel_oracle,
    is_principal,
    kernel_ideal,
    normal_form,
    span_contains,
)
from .polycore import (
    MINUS_INFINITY,
    Polynomial,
    WeightVector,
    compose,
    leading_term,
    partial,
    wdeg,
)


class OracleMismatch(RuntimeError):
    """The Buchberger kernel and the graded linear-algebra oracle disagree."""


@dataclass(frozen=True)
class RelationReport:
    """Everything the pipeline computes for one map and one degree."""

    n: int
    w1: WeightVector
    d: WeightVector
    fbars: tuple  # weighted leading terms of the coordinates
    ideal: IdealBasis
    principal: bool
    R: Polynomial | None  # monic generator when principal (0 for the zero ideal)
    deg2_of_R: object  # WDegree
    parachute: Fraction
    bound_ok: bool

    def to_dict(self) -> dict:
        from .polycore import format_poly

        return {
            "n": self.n,
            "w1": [str(w) for w in self.w1],
            "d": [str(w) for w in self.d],
            "fbars": [format_poly(f) for f in self.fbars],
            "ideal": [format_poly(g, var="z") for g in self.ideal.gens],
            "principal": self.principal,
            "R": None if self.R is None else format_poly(self.R, var="z"),
            "deg2_of_R": (
                "-inf" if self.deg2_of_R is MINUS_INFINITY else str(self.deg2_of_R)
            ),
            "parachute": str(self.parachute),
            "bound_ok": self.bound_ok,
        }


def _as_map(phi: AutWord | PolyMap) -> PolyMap:
    if isinstance(phi, AutWord):
        return expand(phi)
    jacobian_constant(phi)  # necessary check for raw maps; raises otherwise
    return phi


def relation_report(phi: AutWord | PolyMap, w1: WeightVector | None = None,
                    oracle_shadow: bool = True,
                    pair_cap: int = DEFAULT_PAIR_CAP) -> RelationReport:
    """Compute leading terms, relation ideal, principality, R, nabla and the
    degree bound for the map (default weights: standard).

    With integer weights and n <= 3, the graded oracle independently
    recomputes the kernel up to degree nabla + 1 and any disagreement raises
    OracleMismatch; the bound pins down exactly where a principal generator
    can live, so the oracle sees all of it.
    """
    m = _as_map(phi)
    n = m.n
    if w1 is None:
        w1 = WeightVector.standard(n)
    fbars = tuple(leading_term(c, w1) for c in m.coords)
    d = deg2_weights(m, w1)
    ideal = kernel_ideal(fbars, d, pair_cap=pair_cap)
    principal, payload = is_principal(ideal)
    R = payload if principal else None
    deg2_of_R = wdeg(R, d) if R is not None else MINUS_INFINITY
    nabla = d.total() - w1.total()
    if w1.is_standard():
        assert nabla.denominator == 1, "nabla must be an integer for standard degree"
    if principal and R is not None and not R.is_zero():
        bound_ok = deg2_of_R <= nabla + 1
    else:
        bound_ok = True
    report = RelationReport(
        n=n, w1=w1, d=d, fbars=fbars, ideal=ideal, principal=principal,
        R=R, deg2_of_R=deg2_of_R, parachute=nabla, bound_ok=bound_ok,
    )
    if (
        oracle_shadow
        and n <= 3
        and all(w.denominator == 1 for w in d)
        and nabla + 1 > 0
    ):
        _shadow_check(report)
    return report


def _shadow_check(report: RelationReport):
    """Cross-check the kernel against the graded oracle up to nabla + 1."""
    dmax = report.parachute + 1
    oracle = graded_kernel_oracle(report.fbars, report.d, dmax)
    for g in oracle:
        if not normal_form(g, report.ideal).is_zero():
            raise OracleMismatch(
                f"oracle element {g} does not reduce to zero against the kernel basis"
            )
    low_gens = [g for g in report.ideal.gens if wdeg(g, report.d) <= dmax]
    for g in low_gens:
        if not span_contains(oracle, g):
            raise OracleMismatch(
                f"kernel generator {g} of low degree is outside the oracle span"
            )


def check_degree_lemma(phi: AutWord | PolyMap, w1: WeightVector, p: Polynomial,
                       report: RelationReport | None = None):
    """Evaluate deg1(P o F) <= deg2(P) and the strictness criterion.

    Returns (lhs, rhs, strict, tilde_in_I): lhs = deg1(P o F),
    rhs = deg2(P), strict = (lhs < rhs), and tilde_in_I reports whether the
    deg2-leading term of P reduces to zero against the relation ideal.
    Strictness holds exactly when P is nonzero and its leading term is a
    relation.
    """
    m = _as_map(phi)
    if report is None:
        report = relation_report(m, w1)
    lhs = wdeg(compose(p, m.coords), w1)
    rhs = wdeg(p, report.d)
    strict = (rhs is not MINUS_INFINITY) and lhs < rhs
    tilde = leading_term(p, report.d)
    tilde_in_I = (not tilde.is_zero()) and normal_form(tilde, report.ideal).is_zero()
    return lhs, rhs, strict, tilde_in_I


def check_parachute(phi: AutWord | PolyMap, p: Polynomial, k: int,
                    var: int | None = None) -> bool:
    """The k-fold degree minoration under the standard degree:

        deg1(P o F) >= deg1(d^k P / dx_var^k o F) + k*d_var - k*nabla.

    var defaults to the last variable; the guarantee holds for every
    automorphism, so False signals a fault or a non-automorphism input.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    m = _as_map(phi)
    n = m.n
    if var is None:
        var = n
    w1 = WeightVector.standard(n)
    d = deg2_weights(m, w1)
    nabla = d.total() - n
    lhs = wdeg(compose(p, m.coords), w1)
    pk = p
    for _ in range(k):
        pk = partial(pk, var)
    if pk.is_zero():
        return True
    rhs = wdeg(compose(pk, m.coords), w1) + k * d[var] - k * nabla
    return lhs >= rhs


def order_in_R(p: Polynomial, R: Polynomial, d: WeightVector) -> int:
    """Largest k with the deg2-leading term of P in (R^k), via iterated
    exact division by R (k = 0 when R does not divide the leading term)."""
    if R.is_zero() or R.is_constant():
        raise ValueError("R must be a nonzero non-unit")
    current = leading_term(p, d)
    k = 0
    while not current.is_zero():
        q, r = divmod_single(current, R)
        if not r.is_zero():
            break
        current = q
        k += 1
    return k


def support_bound_holds(R: Polynomial, d: WeightVector) -> bool:
    """Every exponent a in the support of R satisfies a . d <= sum(d) - 2.

    For deg2-homogeneous R this is one inequality: deg2(R) <= sum(d) - 2,
    the n = 3 specialization of the drop bound that constrains which
    monomials a principal relation generator can contain.
    """
    budget = d.total() - 2
    ws = d.weights
    return all(
        sum(e * w for e, w in zip(mono, ws)) <= budget for mono in R.terms
    )
