"""Polynomial derivations and the locally nilpotent witness construction.

A derivation is stored as its coefficient tuple (a1,..,an), meaning
sum(a_i * d/dx_i); applying it to P gives sum(a_i * dP/dx_i), which
satisfies the Leibniz rule exactly.  With respect to a p.w.h. degree, the
degree of a nonzero derivation is max_i (deg(a_i) - w_i), and its leading
part keeps from each a_i only the homogeneous component of degree
deg(derivation) + w_i.

For an automorphism F = (f1,..,fn) with inverse (g1,..,gn) and constant
Jacobian mu, the Jacobian derivations are

  delta_i(P) = mu^{-1} * dP/dx_i
  Delta_i(P) = j(g1,..,g_{i-1}, P, g_{i+1},..,gn)

intertwined by Delta_i(P) o F = delta_i(P o F).  Every Delta_i is locally
nilpotent, some index i satisfies deg2(Delta_i) >= -w_i, and the leading
part of that Delta_i for the induced degree deg2 is again locally nilpotent
and stabilizes the ideal of relations; when the ideal is principal with
generator R, the leading part annihilates R.  lnd_witness returns that
index and leading derivation.

Local nilpotence is semi-decided by bounded iteration on the coordinate
functions: vanishing within the cap gives LocallyNilpotent with the
per-variable vanishing orders, otherwise the verdict is Unknown.  The
NotNilpotent verdict exists for callers holding an external certificate;
iteration alone never produces it (for x1 * d/dx1 the iterates never vanish
and never will, but the loop only ever observes non-vanishing).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .autmap import (
    AutWord,
    PolyMap,
    compose_map,
    deg2_weights,
    expand,
    invert_word,
    jacobian_constant,
)
from .polycore import (
    MINUS_INFINITY,
    Polynomial,
    WeightVector,
    homogeneous_component,
    jacobian,
    partial,
    wdeg,
)


class NoWitnessIndex(RuntimeError):
    """No index satisfies the witness inequality: the input map cannot be an
    automorphism (for genuine automorphisms such an index always exists)."""


@dataclass(frozen=True)
class Derivation:
    """sum(coeffs[i] * d/dx_{i+1}) on the polynomial ring in n variables."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        cs = tuple(self.coeffs)
        if len(cs) != self.n:
            raise ValueError(f"expected {self.n} coefficients, got {len(cs)}")
        for c in cs:
            if c.n != self.n:
                raise ValueError("coefficient has wrong variable count")
        object.__setattr__(self, "coeffs", cs)

    @staticmethod
    def coordinate(i: int, n: int) -> "Derivation":
        """d/dx_i (1-based)."""
        cs = [Polynomial.zero(n)] * n
        cs[i - 1] = Polynomial.constant(1, n)
        return Derivation(n, tuple(cs))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)


@dataclass(frozen=True)
class LocallyNilpotent:
    """orders[i] is the minimal k with derivation^k(x_{i+1}) = 0."""

    orders: tuple


@dataclass(frozen=True)
class NotNilpotent:
    variable: int
    reason: str


@dataclass(frozen=True)
class Unknown:
    cap: int


NilpotenceVerdict = Union[LocallyNilpotent, NotNilpotent, Unknown]


def apply(d: Derivation, p: Polynomial) -> Polynomial:
    """sum(a_i * dp/dx_i); a K-derivation of the polynomial ring."""
    if d.n != p.n:
        raise ValueError("dimension mismatch between derivation and polynomial")
    out = Polynomial.zero(p.n)
    for i, a in enumerate(d.coeffs, start=1):
        if a.is_zero():
            continue
        dp = partial(p, i)
        if not dp.is_zero():
            out = out + a * dp
    return out


def derivation_degree(d: Derivation, w: WeightVector):
    """max_i (wdeg(a_i) - w_i); MINUS_INFINITY iff d = 0.

    It suffices to take the sup over the coordinate functions, since for any
    P the degree of d(P) is at most deg(d) + deg(P).
    """
    if len(w) != d.n:
        raise ValueError("weight vector length does not match derivation")
    best = MINUS_INFINITY
    for i, a in enumerate(d.coeffs, start=1):
        da = wdeg(a, w)
        if da is MINUS_INFINITY:
            continue
        val = da - w[i]
        if best is MINUS_INFINITY or val > best:
            best = val
    return best


def leading_derivation(d: Derivation, w: WeightVector) -> Derivation:
    """Leading part for the weighted degree: coefficient i keeps its
    homogeneous component of degree deg(d) + w_i (possibly zero).

    The result is a nonzero w-homogeneous derivation; idempotent on
    homogeneous input.
    """
    r = derivation_degree(d, w)
    if r is MINUS_INFINITY:
        raise ValueError("zero derivation has no leading part")
    coeffs = tuple(
        homogeneous_component(a, w, r + w[i])
        for i, a in enumerate(d.coeffs, start=1)
    )
    return Derivation(d.n, coeffs)


def nilpotence_order(d: Derivation, p: Polynomial, cap: int):
    """deg of p under d: the largest k with d^k(p) != 0.

    Returns MINUS_INFINITY for p = 0, an int when an iterate vanishes within
    cap applications, and Unknown(cap) otherwise.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if p.is_zero():
        return MINUS_INFINITY
    current = p
    for k in range(1, cap + 1):
        current = apply(d, current)
        if current.is_zero():
            return k - 1
    return Unknown(cap)


def default_cap(d: Derivation) -> int:
    """4 * (1 + max total degree of the coefficients) * n."""
    maxdeg = 0
    for c in d.coeffs:
        t = c.total_degree()
        if t is not MINUS_INFINITY:
            maxdeg = max(maxdeg, int(t))
    return 4 * (1 + maxdeg) * d.n


def is_locally_nilpotent(d: Derivation, cap: int | None = None) -> NilpotenceVerdict:
    """Bounded-iteration test on the coordinate functions.

    Vanishing of every x_i within cap applications proves local nilpotence
    (the nilpotent elements form a subalgebra by the Leibniz rule, and the
    x_i generate).  Hitting the cap yields Unknown; this test never returns
    NotNilpotent.
    """
    if cap is None:
        cap = default_cap(d)
    if cap < 1:
        raise ValueError("cap must be >= 1")
    orders = []
    for i in range(1, d.n + 1):
        k = nilpotence_order(d, Polynomial.variable(i, d.n), cap)
        if isinstance(k, Unknown):
            return k
        orders.append(0 if k is MINUS_INFINITY else int(k) + 1)
    return LocallyNilpotent(tuple(orders))


def delta_derivation(inv: PolyMap, i: int, mu: Fraction) -> Derivation:
    """The Jacobian derivation P -> j(g1,..,g_{i-1}, P, g_{i+1},..,gn),
    materialized as a coefficient tuple via multilinearity of the
    determinant: the coefficient of d/dx_j is j(g1,..,x_j,..,gn).

    inv must be the expanded inverse map and mu the Jacobian constant of the
    forward map; j(g1,..,gn) = 1/mu is verified.
    """
    n = inv.n
    if not 1 <= i <= n:
        raise IndexError(f"index {i} out of range 1..{n}")
    jac_inv = jacobian(inv.coords)
    if not (jac_inv.is_constant() and jac_inv.constant_value() == Fraction(1) / mu):
        raise ValueError("inverse map and Jacobian constant are inconsistent")
    coeffs = []
    for j in range(1, n + 1):
        entries = list(inv.coords)
        entries[i - 1] = Polynomial.variable(j, n)
        coeffs.append(jacobian(entries))
    return Derivation(n, tuple(coeffs))


def format_derivation(d: Derivation) -> str:
    """n polynomial lines; line i is the coefficient of d/dx_i."""
    from .polycore import format_poly

    return "\n".join(format_poly(c) for c in d.coeffs)


def parse_derivation(text: str, n: int) -> Derivation:
    from .polycore import parse_poly

    lines = [line for line in (l.strip() for l in text.splitlines()) if line]
    if len(lines) != n:
        raise ValueError(f"expected {n} coefficient lines, got {len(lines)}")
    return Derivation(n, tuple(parse_poly(line, n) for line in lines))


def lnd_witness(phi: AutWord | PolyMap, w1: WeightVector,
                inverse: PolyMap | None = None):
    """Witness index and leading derivation for the degree induced by phi.

    Scans i = 1..n for the first index with deg2(Delta_i) >= -w_i (such an
    index exists for every automorphism; NoWitnessIndex otherwise) and
    returns (i, leading part of Delta_i for deg2).  The caller can check the
    leading part is locally nilpotent and annihilates a principal relation
    generator.

    Word input carries its own inverse; a raw PolyMap needs an explicit
    inverse, which is verified by exact composition.
    """
    if isinstance(phi, AutWord):
        fwd = expand(phi)
        inv = expand(invert_word(phi))
    else:
        fwd = phi
        if inverse is None:
            raise ValueError("a raw PolyMap needs an explicit inverse")
        inv = inverse
        if not compose_map(fwd, inv).is_identity() or not compose_map(inv, fwd).is_identity():
            raise ValueError("supplied inverse does not invert the map")
    if len(w1) != fwd.n:
        raise ValueError("weight vector length does not match map")
    mu = jacobian_constant(fwd)
    d = deg2_weights(fwd, w1)
    for i in range(1, fwd.n + 1):
        delta = delta_derivation(inv, i, mu)
        if delta.is_zero():
            continue
        if derivation_degree(delta, d) >= -w1[i]:
            return i, leading_derivation(delta, d)
    raise NoWitnessIndex(
        "no index satisfies deg2(Delta_i) >= -w_i; input is not an automorphism"
    )
