"""Seeded property suites over randomly generated tame words.

Each suite draws a deterministic corpus from an explicit seed and checks
one family of exact identities or inequalities case by case:

  jvdk-roundtrip     decompose, recompose exactly, strict degree descent
  lemma-1<2          deg1(P o F) <= deg2(P), strict iff the leading term
                     of P is a relation
  parachute          the k-fold degree minoration
  lnd-witness        witness index inequality, local nilpotence of the
                     leading derivation, annihilation of principal R
  lnd01              the intertwining Delta_i(P) o F = mu^-1 * d(P o F)/dx_i
  degree-bound       deg2(R) <= d1+..+dn-n+1 for principal kernels
  oracle-agreement   Buchberger kernel == graded linear-algebra oracle up
                     to degree nabla+1
  affine-ideal       zero relation ideal exactly for affine words
  classify-soundness classifier round-trip, witness verification, kernel
                     membership of the canonical forms

All verification is exact rational arithmetic; a suite fails only when a
checked identity genuinely fails.  Suites are pure functions of
(seed, count) and independent cases may be sharded freely; results merge
by case index.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import classify3
from .autmap import (
    Affine,
    AutWord,
    Elementary,
    PolyMap,
    Transposition,
    expand,
    invert_word,
    jacobian_constant,
)
from .classify3 import (
    Classified,
    NeedsExtension,
    Tag,
    canonical_lnd,
    classify,
    normalize,
    reconstruct,
    sample_classified,
)
from .derivation import (
    LocallyNilpotent,
    apply,
    delta_derivation,
    derivation_degree,
    is_locally_nilpotent,
    lnd_witness,
)
from .groebner import normal_form, span_contains, graded_kernel_oracle
from .jvdk import decompose2, Decomposition
from .polycore import (
    MINUS_INFINITY,
    Polynomial,
    WeightVector,
    compose,
    partial,
    wdeg,
)
from .relations import check_degree_lemma, check_parachute, relation_report


@dataclass(frozen=True)
class CaseResult:
    index: int
    ok: bool
    detail: str


@dataclass(frozen=True)
class SuiteResult:
    name: str
    seed: int
    count: int
    cases: tuple
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self):
        return [c for c in self.cases if not c.ok]

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.name}: {len(self.cases) - len(self.failures)}/"
            f"{len(self.cases)} cases, seed={self.seed}, {self.elapsed:.2f}s"
        )


# -- random corpora ----------------------------------------------------------


def random_polynomial(rng: random.Random, n: int, max_terms: int = 4,
                      max_deg: int = 3, coeff_bound: int = 9) -> Polynomial:
    """A random nonzero polynomial with small integer coefficients."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            mono = [0] * n
            for _ in range(rng.randint(0, max_deg)):
                mono[rng.randrange(n)] += 1
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[tuple(mono)] = Fraction(c)
        p = Polynomial(n, terms)
        if not p.is_zero():
            return p


def _random_addend(rng: random.Random, n: int, target: int,
                   max_deg: int, coeff_bound: int) -> Polynomial:
    """Nonconstant polynomial in the variables other than `target`."""
    others = [i for i in range(1, n + 1) if i != target]
    while True:
        terms = {}
        for _ in range(rng.randint(1, 3)):
            deg = rng.randint(1, max_deg)
            mono = [0] * n
            for _ in range(deg):
                mono[rng.choice(others) - 1] += 1
            c = rng.randint(-coeff_bound, coeff_bound)
            if c:
                terms[tuple(mono)] = Fraction(c)
        p = Polynomial(n, terms)
        if not p.is_zero() and p.total_degree() >= 1:
            return p


def _random_affine(rng: random.Random, n: int, coeff_bound: int = 3) -> Affine:
    while True:
        matrix = tuple(
            tuple(Fraction(rng.randint(-coeff_bound, coeff_bound)) for _ in range(n))
            for _ in range(n)
        )
        try:
            return Affine(matrix, tuple(Fraction(rng.randint(-3, 3)) for _ in range(n)))
        except ValueError:
            continue


def _random_generator(rng: random.Random, n: int, mode: str,
                      max_addend_deg: int, coeff_bound: int):
    r = rng.random()
    if mode == "affine":
        kind = "affine" if r < 0.7 else "transposition"
    elif r < 0.6:
        kind = "elementary"
    elif r < 0.85:
        kind = "transposition"
    else:
        kind = "affine"
    if kind == "elementary":
        target = rng.randint(1, n)
        return Elementary(
            target, _random_addend(rng, n, target, max_addend_deg, coeff_bound)
        )
    if kind == "transposition":
        i = rng.randint(1, n)
        j = rng.randint(1, n - 1)
        return Transposition(i, j if j < i else j + 1, n)
    return _random_affine(rng, n)


def random_tame_word(rng: random.Random, n: int, max_gens: int = 6,
                     max_addend_deg: int = 4, coeff_bound: int = 9,
                     max_coord_deg: int = 16, mode: str = "any") -> AutWord:
    """A random word of tame generators whose expansion stays within a
    degree budget; mode selects 'any', 'affine' or 'nonaffine' corpora.

    The word is expanded incrementally while sampling and abandoned as soon
    as an intermediate coordinate degree leaves the budget, so rejected
    draws never pay for a large expansion.
    """
    from .autmap import compose_map, generator_map

    for _ in range(2000):
        target_len = rng.randint(1, max_gens)
        gens = []
        m = PolyMap.identity(n)
        ok = True
        for _ in range(target_len):
            g = _random_generator(rng, n, mode, max_addend_deg, coeff_bound)
            m = compose_map(m, generator_map(g))
            gens.append(g)
            if mode != "affine":
                degs = [c.total_degree() for c in m.coords]
                if any(d is MINUS_INFINITY or d > max_coord_deg for d in degs):
                    ok = False
                    break
        if not ok:
            continue
        word = AutWord(n, tuple(gens))
        if mode == "affine":
            return word
        maxdeg = max(int(c.total_degree()) for c in m.coords)
        if maxdeg < 1 or maxdeg > max_coord_deg:
            continue
        if mode == "nonaffine" and maxdeg < 2:
            continue
        return word
    raise RuntimeError("failed to sample a word within the degree budget")


@lru_cache(maxsize=8)
def plane_corpus(seed: int, count: int, max_coord_deg: int = 16):
    """The seeded n = 2 corpus shared by the decomposition, bound, witness
    and oracle suites."""
    rng = random.Random(seed)
    return tuple(
        random_tame_word(rng, 2, max_coord_deg=max_coord_deg) for _ in range(count)
    )


@lru_cache(maxsize=8)
def space_corpus_principal(seed: int, count: int, max_coord_deg: int = 6):
    """Seeded n = 3 words whose relation ideal has a singleton basis."""
    rng = random.Random(seed)
    words = []
    while len(words) < count:
        word = random_tame_word(rng, 3, max_gens=5, max_addend_deg=3,
                                max_coord_deg=max_coord_deg, mode="nonaffine")
        report = relation_report(word)
        if report.principal and report.R is not None and not report.R.is_zero():
            words.append(word)
    return tuple(words)


# -- the suites --------------------------------------------------------------


def _suite(name, seed, count, case_iter) -> SuiteResult:
    start = time.monotonic()
    cases = tuple(case_iter)
    return SuiteResult(name, seed, count, cases, time.monotonic() - start)


def run_jvdk_roundtrip(seed: int, count: int) -> SuiteResult:
    def cases():
        for idx, word in enumerate(plane_corpus(seed, count)):
            m = expand(word)
            dec = decompose2(m)
            if not isinstance(dec, Decomposition):
                yield CaseResult(idx, False, f"decomposition failed: {dec}")
                continue
            if expand(dec.word) != m:
                yield CaseResult(idx, False, "recomposition mismatch")
                continue
            sums = [s.degree_sum_before for s in dec.steps] + (
                [dec.steps[-1].degree_sum_after] if dec.steps else []
            )
            if any(a <= b for a, b in zip(sums, sums[1:])):
                yield CaseResult(idx, False, f"degree sums not strictly decreasing: {sums}")
                continue
            bad = [
                s for s in dec.steps
                if s.degree_sum_before - s.degree_sum_after <= 0 or s.r < 1
            ]
            if bad:
                yield CaseResult(idx, False, f"bad reduction step {bad[0]}")
                continue
            yield CaseResult(idx, True, f"{len(dec.steps)} steps")

    return _suite("jvdk-roundtrip", seed, count, cases())


def run_lemma_1_2(seed: int, count: int) -> SuiteResult:
    def cases():
        rng = random.Random(seed + 1)
        idx = 0
        while idx < count:
            n = rng.choice([2, 3])
            budget = 8 if n == 2 else 5
            word = random_tame_word(rng, n, max_gens=4, max_addend_deg=3,
                                    max_coord_deg=budget)
            report = relation_report(word)
            for _ in range(min(5, count - idx)):
                p = random_polynomial(rng, n)
                lhs, rhs, strict, tilde_in = check_degree_lemma(
                    expand(word), report.w1, p, report=report
                )
                ok = lhs <= rhs and (strict == tilde_in)
                detail = f"n={n} lhs={lhs} rhs={rhs} strict={strict} in_I={tilde_in}"
                yield CaseResult(idx, ok, detail)
                idx += 1

    return _suite("lemma-1<2", seed, count, cases())


def run_parachute(seed: int, count: int) -> SuiteResult:
    def cases():
        rng = random.Random(seed + 2)
        idx = 0
        while idx < count:
            n = rng.choice([2, 3])
            budget = 8 if n == 2 else 5
            word = random_tame_word(rng, n, max_gens=4, max_addend_deg=3,
                                    max_coord_deg=budget)
            m = expand(word)
            for _ in range(min(5, count - idx)):
                p = random_polynomial(rng, n)
                k = rng.randint(0, 3)
                var = rng.randint(1, n)
                ok = check_parachute(m, p, k, var=var)
                yield CaseResult(idx, ok, f"n={n} k={k} var={var}")
                idx += 1

    return _suite("parachute", seed, count, cases())


def run_lnd_witness(seed: int, count: int) -> SuiteResult:
    def cases():
        two = plane_corpus(seed, count)
        three = space_corpus_principal(seed + 3, max(1, count // 5))
        for idx, word in enumerate(tuple(two) + tuple(three)):
            n = word.n
            w1 = WeightVector.standard(n)
            report = relation_report(word)
            try:
                i, dbar = lnd_witness(word, w1)
            except Exception as exc:  # noqa: BLE001 - reported as a failure
                yield CaseResult(idx, False, f"witness failed: {exc}")
                continue
            delta = delta_derivation(
                expand(invert_word(word)), i, jacobian_constant(expand(word))
            )
            if not derivation_degree(delta, report.d) >= -w1[i]:
                yield CaseResult(idx, False, "witness inequality fails")
                continue
            verdict = is_locally_nilpotent(dbar)
            if not isinstance(verdict, LocallyNilpotent):
                yield CaseResult(idx, False, f"leading derivation verdict {verdict}")
                continue
            if report.principal and report.R is not None and not report.R.is_zero():
                if not apply(dbar, report.R).is_zero():
                    yield CaseResult(idx, False, "leading derivation does not kill R")
                    continue
            yield CaseResult(idx, True, f"n={n} index={i}")

    return _suite("lnd-witness", seed, count, cases())


def run_lnd01(seed: int, count: int) -> SuiteResult:
    def cases():
        rng = random.Random(seed + 4)
        idx = 0
        while idx < count:
            n = rng.choice([2, 3])
            budget = 4 if n == 2 else 3
            word = random_tame_word(rng, n, max_gens=4, max_addend_deg=2,
                                    max_coord_deg=budget)
            m = expand(word)
            inv = expand(invert_word(word))
            mu = jacobian_constant(m)
            for _ in range(min(2, count - idx)):
                p = random_polynomial(rng, n, max_deg=3)
                ok = True
                detail = f"n={n}"
                for i in range(1, n + 1):
                    delta = delta_derivation(inv, i, mu)
                    lhs = compose(apply(delta, p), m.coords)
                    rhs = partial(compose(p, m.coords), i) * (Fraction(1) / mu)
                    if lhs != rhs:
                        ok = False
                        detail = f"n={n} forward identity fails at i={i}"
                        break
                    lhs2 = apply(delta, compose(p, inv.coords))
                    rhs2 = compose(partial(p, i) * (Fraction(1) / mu), inv.coords)
                    if lhs2 != rhs2:
                        ok = False
                        detail = f"n={n} inverse identity fails at i={i}"
                        break
                yield CaseResult(idx, ok, detail)
                idx += 1

    return _suite("lnd01", seed, count, cases())


def run_degree_bound(seed: int, count: int) -> SuiteResult:
    def cases():
        two = plane_corpus(seed, count)
        three = space_corpus_principal(seed + 3, max(1, count // 5))
        for idx, word in enumerate(tuple(two) + tuple(three)):
            report = relation_report(word)
            if not (report.principal and report.R is not None):
                yield CaseResult(idx, True, "kernel not principal; bound vacuous")
                continue
            if report.R.is_zero():
                yield CaseResult(idx, True, "zero ideal")
                continue
            deg = report.deg2_of_R
            ok = (
                deg is not MINUS_INFINITY
                and Fraction(deg).denominator == 1
                and deg <= report.parachute + 1
            )
            yield CaseResult(
                idx, ok, f"deg2(R)={deg} <= nabla+1={report.parachute + 1}"
            )

    return _suite("degree-bound", seed, count, cases())


def run_oracle_agreement(seed: int, count: int) -> SuiteResult:
    def cases():
        two = plane_corpus(seed, count)
        three = space_corpus_principal(seed + 3, max(1, count // 5))
        for idx, word in enumerate(tuple(two) + tuple(three)):
            try:
                report = relation_report(word)  # shadow check runs inside
            except Exception as exc:  # noqa: BLE001
                yield CaseResult(idx, False, f"oracle mismatch: {exc}")
                continue
            dmax = report.parachute + 1
            oracle = graded_kernel_oracle(report.fbars, report.d, dmax)
            ok = all(normal_form(g, report.ideal).is_zero() for g in oracle)
            low = [g for g in report.ideal.gens if wdeg(g, report.d) <= dmax]
            ok = ok and all(span_contains(oracle, g) for g in low)
            yield CaseResult(idx, ok, f"n={word.n} oracle elements={len(oracle)}")

    return _suite("oracle-agreement", seed, count, cases())


def run_affine_ideal(seed: int, count: int) -> SuiteResult:
    def cases():
        rng = random.Random(seed + 5)
        half = count // 2
        for idx in range(count):
            mode = "affine" if idx < half else "nonaffine"
            n = rng.choice([2, 3])
            budget = 8 if n == 2 else 5
            word = random_tame_word(rng, n, max_gens=4, max_addend_deg=3,
                                    max_coord_deg=budget, mode=mode)
            report = relation_report(word)
            if mode == "affine":
                ok = report.ideal.is_zero_ideal()
                yield CaseResult(idx, ok, f"affine n={n}: ideal zero={ok}")
            else:
                ok = not report.ideal.is_zero_ideal()
                yield CaseResult(idx, ok, f"nonaffine n={n}: ideal nonzero={ok}")

    return _suite("affine-ideal", seed, count, cases())


def run_classify_soundness(seed: int, count: int) -> SuiteResult:
    def cases():
        rng = random.Random(seed + 6)
        tags = [t for t in classify3.NONZERO_TAGS]
        for idx in range(count):
            tag = tags[idx % len(tags)]
            R, d = sample_classified(tag, rng)
            out = classify(R, d)
            if not isinstance(out, Classified) or out.info.tag is not tag:
                yield CaseResult(idx, False, f"{tag.value}: classified as {out}")
                continue
            if reconstruct(out.info) != R:
                yield CaseResult(idx, False, f"{tag.value}: reconstruction mismatch")
                continue
            nf = normalize(out.info)
            if isinstance(nf, NeedsExtension):
                ok = tag in (Tag.T9, Tag.T11)
                yield CaseResult(idx, ok, f"{tag.value}: {nf.reason}")
                continue
            lnd = canonical_lnd(nf)
            if not apply(lnd, nf.canonical_poly).is_zero():
                yield CaseResult(idx, False, f"{tag.value}: canonical LND fails")
                continue
            yield CaseResult(idx, True, f"{tag.value} -> {type(nf.canonical).__name__}")

    return _suite("classify-soundness", seed, count, cases())


SUITES = {
    "jvdk-roundtrip": run_jvdk_roundtrip,
    "lemma-1<2": run_lemma_1_2,
    "lemma-1-2": run_lemma_1_2,  # shell-friendly alias
    "parachute": run_parachute,
    "lnd-witness": run_lnd_witness,
    "lnd01": run_lnd01,
    "degree-bound": run_degree_bound,
    "oracle-agreement": run_oracle_agreement,
    "affine-ideal": run_affine_ideal,
    "classify-soundness": run_classify_soundness,
}


def run_suite(name: str, seed: int, count: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(
            f"unknown suite {name!r}; available: {', '.join(sorted(set(SUITES)))}"
        )
    return SUITES[name](seed, count)
