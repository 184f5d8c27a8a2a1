"""Exact Buchberger engine with block elimination orders.

Provides reduced Groebner bases over the rationals, multivariate division
(normal forms), and the two relation-ideal workhorses:

  * kernel_ideal: the kernel of the ring map z_i -> image_i, computed by
    eliminating the x-block from the ideal (z_i - image_i).  When the images
    are the weighted leading terms of an automorphism's coordinates, this
    kernel is the ideal of relations between those leading terms.
  * graded_kernel_oracle: an independent degree-by-degree linear-algebra
    recomputation of the kernel's graded slices, used to cross-check the
    Buchberger route.  The kernel is homogeneous for the weights d, so each
    slice can be solved as one exact linear system.

Principality of an ideal is decided by the size of its reduced basis: the
reduced Groebner basis of a principal ideal is a singleton, and conversely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .polycore import Polynomial, WeightVector


class ResourceCapExceeded(RuntimeError):
    """The S-pair reduction budget was exhausted before the basis stabilized."""


DEFAULT_PAIR_CAP = 100_000


# -- monomial orders ---------------------------------------------------------


class MonomialOrder:
    """A total order on exponent tuples, compatible with multiplication.

    Subclasses implement key(); monomial a is greater than b iff
    key(a) > key(b) as Python tuples.
    """

    def key(self, exp):
        raise NotImplementedError

    def greater(self, a, b) -> bool:
        return self.key(a) > self.key(b)


@dataclass(frozen=True)
class Lex(MonomialOrder):
    """Pure lexicographic order, x1 > x2 > ..."""

    def key(self, exp):
        return exp


@dataclass(frozen=True)
class GradedLex(MonomialOrder):
    """Weighted degree first, ties broken lexicographically.

    weights = None means the standard grading (all weights 1).
    """

    weights: tuple | None = None

    def key(self, exp):
        if self.weights is None:
            return (sum(exp), exp)
        return (sum(e * w for e, w in zip(exp, self.weights)), exp)


@dataclass(frozen=True)
class BlockElimination(MonomialOrder):
    """Front block of variables dominates: eliminate the first `front` variables.

    Any monomial containing a front variable ranks above every monomial in
    the back variables alone, because the front key leads with the front
    block's (positive-weight) degree.
    """

    front: int
    front_order: MonomialOrder
    back_order: MonomialOrder

    def key(self, exp):
        return (self.front_order.key(exp[: self.front]), self.back_order.key(exp[self.front :]))


def leading_monomial(p: Polynomial, order: MonomialOrder):
    if p.is_zero():
        raise ValueError("zero polynomial has no leading monomial")
    return max(p.terms, key=order.key)


def leading_coeff(p: Polynomial, order: MonomialOrder) -> Fraction:
    return p.terms[leading_monomial(p, order)]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_quot(a, b):
    return tuple(x - y for x, y in zip(a, b))


def content_normalize(p: Polynomial) -> Polynomial:
    """Scale p so its coefficients are coprime integers with no common factor.

    Keeps the sign of the lexicographically largest monomial's coefficient.
    Controls coefficient blow-up inside Buchberger.
    """
    if p.is_zero():
        return p
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = gcd(num_gcd, c.numerator)
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd)
    out = p * scale
    if out.terms[max(out.terms)] < 0:
        out = -out
    return out


def monic(p: Polynomial, order: MonomialOrder) -> Polynomial:
    if p.is_zero():
        return p
    return p * (Fraction(1) / leading_coeff(p, order))


@dataclass(frozen=True)
class IdealBasis:
    """A generating set with its monomial order; reduced=True means a reduced
    Groebner basis (monic, pairwise fully reduced, minimal)."""

    gens: tuple
    order: MonomialOrder
    reduced: bool
    n: int

    def __post_init__(self):
        gens = tuple(g for g in self.gens if not g.is_zero())
        object.__setattr__(self, "gens", gens)

    def is_zero_ideal(self) -> bool:
        return not self.gens

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def normal_form(p: Polynomial, basis: IdealBasis | Sequence[Polynomial],
                order: MonomialOrder | None = None) -> Polynomial:
    """Remainder of multivariate division of p by the basis.

    No term of the result is divisible by any basis leading monomial.  When
    the basis is a Groebner basis, the remainder is 0 iff p lies in the ideal.
    """
    if isinstance(basis, IdealBasis):
        gens = basis.gens
        order = basis.order
    else:
        gens = tuple(g for g in basis if not g.is_zero())
        if order is None:
            order = GradedLex()
    if not gens:
        return p
    lms = [leading_monomial(g, order) for g in gens]
    lcs = [g.terms[lm] for g, lm in zip(gens, lms)]
    remainder = Polynomial.zero(p.n)
    work = p
    while not work.is_zero():
        mono = leading_monomial(work, order)
        coeff = work.terms[mono]
        for g, lm, lc in zip(gens, lms, lcs):
            if _divides(lm, mono):
                quot = _mono_quot(mono, lm)
                factor = Polynomial.monomial(quot, coeff / lc, p.n)
                work = work - factor * g
                break
        else:
            remainder = remainder + Polynomial.monomial(mono, coeff, p.n)
            work = work - Polynomial.monomial(mono, coeff, p.n)
    return remainder


def divmod_single(p: Polynomial, d: Polynomial,
                  order: MonomialOrder | None = None):
    """Division with remainder by a single divisor: p = q*d + r.

    r is 0 exactly when d divides p (single-divisor division is exact
    membership for principal ideals).
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if order is None:
        order = GradedLex()
    lm = leading_monomial(d, order)
    lc = d.terms[lm]
    q = Polynomial.zero(p.n)
    r = Polynomial.zero(p.n)
    work = p
    while not work.is_zero():
        mono = leading_monomial(work, order)
        coeff = work.terms[mono]
        if _divides(lm, mono):
            factor = Polynomial.monomial(_mono_quot(mono, lm), coeff / lc, p.n)
            q = q + factor
            work = work - factor * d
        else:
            t = Polynomial.monomial(mono, coeff, p.n)
            r = r + t
            work = work - t
    return q, r


def divides_poly(d: Polynomial, p: Polynomial) -> bool:
    """True iff d divides p in the polynomial ring."""
    return divmod_single(p, d)[1].is_zero()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    lf = leading_monomial(f, order)
    lg = leading_monomial(g, order)
    l = _mono_lcm(lf, lg)
    mf = Polynomial.monomial(_mono_quot(l, lf), Fraction(1) / f.terms[lf], f.n)
    mg = Polynomial.monomial(_mono_quot(l, lg), Fraction(1) / g.terms[lg], g.n)
    return mf * f - mg * g


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder,
               pair_cap: int = DEFAULT_PAIR_CAP) -> IdealBasis:
    """Reduced Groebner basis of the ideal generated by gens.

    Deterministic given the input order.  Pairs are processed smallest lcm
    first; the coprime-lcm and chain criteria discard pairs; every
    intermediate polynomial is content-normalized.  Raises
    ResourceCapExceeded after pair_cap S-pair reductions.
    """
    G = [content_normalize(g) for g in gens if not g.is_zero()]
    if not G:
        n = gens[0].n if gens else 1
        return IdealBasis((), order, True, n)
    n = G[0].n

    def lm(i):
        return leading_monomial(G[i], order)

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    done = set()
    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: order.key(_mono_lcm(lm(ij[0]), lm(ij[1]))))
        pairs.remove((i, j))
        done.add((i, j))
        li, lj = lm(i), lm(j)
        l = _mono_lcm(li, lj)
        # Coprime-lcm criterion: S-polynomial reduces to zero automatically.
        if l == tuple(a + b for a, b in zip(li, lj)):
            continue
        # Chain criterion: some k with lm(k) | lcm and both flank pairs done.
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(lm(k), l):
                pik = (min(i, k), max(i, k))
                pjk = (min(j, k), max(j, k))
                if pik in done and pjk in done:
                    skip = True
                    break
        if skip:
            continue
        reductions += 1
        if reductions > pair_cap:
            raise ResourceCapExceeded(
                f"buchberger exceeded {pair_cap} S-pair reductions"
            )
        rem = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if rem.is_zero():
            continue
        rem = content_normalize(rem)
        G.append(rem)
        new = len(G) - 1
        for k in range(new):
            pairs.add((k, new))
    return _reduce_basis(G, order, n)


def _reduce_basis(G, order, n) -> IdealBasis:
    """Interreduce to the unique reduced (monic) Groebner basis."""
    # Drop members whose leading monomial is divisible by another's.
    lms = [leading_monomial(g, order) for g in G]
    keep = []
    for i, g in enumerate(G):
        li = lms[i]
        redundant = any(
            j != i and _divides(lms[j], li) and (lms[j] != li or j < i)
            for j in range(len(G))
        )
        if not redundant:
            keep.append(g)
    # Fully reduce each member against the others, repeating to a fixpoint.
    changed = True
    while changed:
        changed = False
        for i in range(len(keep)):
            others = keep[:i] + keep[i + 1 :]
            if not others:
                continue
            r = normal_form(keep[i], others, order)
            if r.is_zero():
                keep.pop(i)
                changed = True
                break
            if r != keep[i]:
                keep[i] = content_normalize(r)
                changed = True
                break
    basis = sorted((monic(g, order) for g in keep),
                   key=lambda g: order.key(leading_monomial(g, order)),
                   reverse=True)
    return IdealBasis(tuple(basis), order, True, n)


def is_principal(basis: IdealBasis):
    """(True, monic generator) iff the reduced basis is empty or a singleton.

    The zero ideal reports (True, 0); otherwise a singleton reduced basis is
    exactly the principal case.  Returns (False, gens) for everything else.
    """
    if not basis.reduced:
        raise ValueError("is_principal needs a reduced basis")
    if basis.is_zero_ideal():
        return True, Polynomial.zero(basis.n)
    if len(basis.gens) == 1:
        return True, basis.gens[0]
    return False, basis.gens


# -- kernels of ring maps ----------------------------------------------------


def _embed(p: Polynomial, total: int, offset: int) -> Polynomial:
    """View an n-variable polynomial inside a larger ring at the given offset."""
    out = {}
    for mono, c in p.terms.items():
        big = [0] * total
        big[offset : offset + len(mono)] = mono
        out[tuple(big)] = c
    return Polynomial(total, out)


def _project_back(p: Polynomial, nx: int, nz: int) -> Polynomial:
    out = {}
    for mono, c in p.terms.items():
        assert all(e == 0 for e in mono[:nx])
        out[mono[nx:]] = c
    return Polynomial(nz, out)


def elimination_order(nx: int, nz: int, dweights: WeightVector) -> BlockElimination:
    """x-block in front under graded lex, z-block behind graded by dweights."""
    return BlockElimination(
        front=nx,
        front_order=GradedLex(),
        back_order=GradedLex(tuple(dweights.weights)),
    )


def kernel_ideal(images: Sequence[Polynomial], dweights: WeightVector,
                 pair_cap: int = DEFAULT_PAIR_CAP) -> IdealBasis:
    """Reduced Groebner basis (in the relation variables z1..zn, graded by
    dweights) of the kernel of z_i -> images[i].

    Computed by eliminating the x-block from the ideal (z_i - images[i]) in
    the combined ring Q[x1..xn, z1..zn].  Every returned generator G
    satisfies G(images) = 0 exactly.
    """
    images = list(images)
    if not images:
        raise ValueError("empty image list")
    nx = images[0].n
    nz = len(images)
    if len(dweights) != nz:
        raise ValueError("dweights length must match image count")
    total = nx + nz
    order = elimination_order(nx, nz, dweights)
    gens = []
    for i, img in enumerate(images):
        z_i = [0] * total
        z_i[nx + i] = 1
        gens.append(Polynomial.monomial(tuple(z_i), 1, total) - _embed(img, total, 0))
    gb = buchberger(gens, order, pair_cap=pair_cap)
    back = GradedLex(tuple(dweights.weights))
    eliminated = [
        _project_back(g, nx, nz)
        for g in gb.gens
        if all(all(e == 0 for e in mono[:nx]) for mono in g.terms)
    ]
    basis = sorted((monic(g, back) for g in eliminated),
                   key=lambda g: back.key(leading_monomial(g, back)),
                   reverse=True)
    return IdealBasis(tuple(basis), back, True, nz)


# -- independent graded oracle ----------------------------------------------


def _exponents_up_to(d, budget):
    """All exponent tuples a with a . d <= budget (weights d positive)."""
    n = len(d)

    def rec(i, remaining):
        if i == n:
            yield ()
            return
        e = 0
        while e * d[i] <= remaining:
            for rest in rec(i + 1, remaining - e * d[i]):
                yield (e,) + rest
            e += 1

    yield from rec(0, budget)


def _nullspace(rows, ncols):
    """Basis of the nullspace of the exact rational matrix given by rows."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fc]
        basis.append(vec)
    return basis


def graded_kernel_oracle(images: Sequence[Polynomial], dweights: WeightVector,
                         dmax) -> list:
    """Degree-by-degree linear-algebra recomputation of the kernel.

    For each weighted degree D <= dmax, enumerates the monomials z^a with
    a . d = D, expands sum(c_a * images^a) = 0 as an exact linear system and
    returns a basis of solutions as polynomials in the z-variables (monic
    for the dweights-graded lex order).  Independent of the Buchberger route.
    """
    images = list(images)
    nz = len(images)
    if len(dweights) != nz:
        raise ValueError("dweights length must match image count")
    d = list(dweights.weights)
    dmax = Fraction(dmax)
    by_degree: dict = {}
    for alpha in _exponents_up_to(d, dmax):
        deg = sum(e * w for e, w in zip(alpha, d))
        by_degree.setdefault(deg, []).append(alpha)
    # Power caches for the images.
    caches = [[Polynomial.constant(1, images[0].n)] for _ in images]

    def image_power(i, e):
        cache = caches[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    back = GradedLex(tuple(dweights.weights))
    found = []
    for deg in sorted(by_degree):
        alphas = sorted(by_degree[deg])
        if deg == 0:
            continue  # only the constant monomial; no nonzero relation
        expansions = []
        support = set()
        for alpha in alphas:
            prod = Polynomial.constant(1, images[0].n)
            for i, e in enumerate(alpha):
                if e:
                    prod = prod * image_power(i, e)
            expansions.append(prod)
            support.update(prod.terms)
        support = sorted(support)
        row_index = {mono: k for k, mono in enumerate(support)}
        # One matrix column per candidate monomial, one row per x-monomial.
        columns = []
        for prod in expansions:
            col = [Fraction(0)] * len(support)
            for mono, c in prod.terms.items():
                col[row_index[mono]] = c
            columns.append(col)
        rows = [[columns[j][i] for j in range(len(columns))] for i in range(len(support))]
        if not rows:
            rows = [[Fraction(0)] * len(columns)]
        for vec in _nullspace(rows, len(columns)):
            poly = Polynomial(nz, {alpha: c for alpha, c in zip(alphas, vec) if c})
            found.append(monic(poly, back))
    return found


def span_contains(vectors: Sequence[Polynomial], target: Polynomial) -> bool:
    """Exact linear-span membership test for polynomials (as coefficient vectors)."""
    support = sorted(set(itertools.chain(target.terms, *(v.terms for v in vectors))))
    index = {m: i for i, m in enumerate(support)}
    rows = []
    for v in vectors:
        row = [Fraction(0)] * len(support)
        for m, c in v.terms.items():
            row[index[m]] = c
        rows.append(row)
    tvec = [Fraction(0)] * len(support)
    for m, c in target.terms.items():
        tvec[index[m]] = c
    # Gaussian elimination of rows; then reduce tvec against them.
    pivots = {}
    reduced_rows = []
    for row in rows:
        row = list(row)
        for col, rr in pivots.items():
            if row[col] != 0:
                f = row[col]
                row = [a - f * b for a, b in zip(row, rr)]
        lead = next((c for c in range(len(row)) if row[c] != 0), None)
        if lead is None:
            continue
        inv = Fraction(1) / row[lead]
        row = [a * inv for a in row]
        pivots[lead] = row
        reduced_rows.append(row)
    for col, rr in pivots.items():
        if tvec[col] != 0:
            f = tvec[col]
            tvec = [a - f * b for a, b in zip(tvec, rr)]
    return all(a == 0 for a in tvec)
