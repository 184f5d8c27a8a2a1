"""Polynomial automorphisms as generator words and coordinate tuples.

An automorphism of affine n-space enters the system as an AutWord: an
ordered list of generators, each one of

  * Affine(matrix, shift)      x |-> M x + s with det(M) != 0,
  * Elementary(target, addend) adds a polynomial in the other variables
                               to one coordinate,
  * Transposition(i, j)        swaps two coordinates.

expand() turns a word into a PolyMap, the explicit coordinate tuple
(f1,..,fn); composition of maps is substitution, (F o G)(x) = F(G(x)),
and expand([g1,..,gk]) = G1 o G2 o .. o Gk.  A word carries its own
certificate of invertibility: invert_word reverses the list and inverts
each generator.

Raw PolyMaps are accepted elsewhere in the library but are only *certified*
as automorphisms through the two-variable decomposition (jvdk) or, for
n >= 3, the non-certifying constant-Jacobian check jacobian_constant.

Text formats (used by the CLI and the tests):
  word: one generator per line,
        "E <i> <poly>" | "T <i> <j>" | "A <n*n rationals> | <n rationals>"
  map:  n lines, one polynomial per coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polycore import (
    Polynomial,
    WeightVector,
    compose,
    format_poly,
    jacobian,
    parse_poly,
    wdeg,
)


class NonConstantJacobian(ValueError):
    """The Jacobian determinant is not constant: the map is not certified."""


class ZeroJacobian(ValueError):
    """The Jacobian determinant vanishes identically."""


@dataclass(frozen=True)
class Affine:
    """x |-> M x + s with an invertible rational matrix M."""

    matrix: tuple  # n rows, each a tuple of n Fractions
    shift: tuple  # n Fractions

    def __post_init__(self):
        m = tuple(tuple(Fraction(a) for a in row) for row in self.matrix)
        s = tuple(Fraction(a) for a in self.shift)
        n = len(m)
        if n == 0 or any(len(row) != n for row in m) or len(s) != n:
            raise ValueError("affine generator needs a square matrix and a matching shift")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "shift", s)
        if _det_matrix(m) == 0:
            raise ValueError("affine generator has singular matrix")

    @property
    def n(self) -> int:
        return len(self.matrix)

    @staticmethod
    def identity(n: int) -> "Affine":
        return Affine(
            tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)),
            (Fraction(0),) * n,
        )

    def is_identity(self) -> bool:
        return self == Affine.identity(self.n)


@dataclass(frozen=True)
class Elementary:
    """Adds a polynomial in the other variables to coordinate `target` (1-based)."""

    target: int
    addend: Polynomial

    def __post_init__(self):
        if not 1 <= self.target <= self.addend.n:
            raise ValueError(f"target {self.target} out of range 1..{self.addend.n}")
        if self.addend.involves(self.target):
            raise ValueError("elementary addend must not involve the target variable")

    @property
    def n(self) -> int:
        return self.addend.n


@dataclass(frozen=True)
class Transposition:
    """Swaps coordinates i and j (1-based)."""

    i: int
    j: int
    n: int

    def __post_init__(self):
        if not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise ValueError("transposition index out of range")
        if self.i == self.j:
            raise ValueError("transposition needs two distinct indices")


Generator = Union[Affine, Elementary, Transposition]


@dataclass(frozen=True)
class AutWord:
    """An ordered list of generators sharing one variable count."""

    n: int
    gens: tuple

    def __post_init__(self):
        gens = tuple(self.gens)
        for g in gens:
            if g.n != self.n:
                raise ValueError("generator variable count does not match word")
        object.__setattr__(self, "gens", gens)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __add__(self, other: "AutWord") -> "AutWord":
        if other.n != self.n:
            raise ValueError("cannot concatenate words with different variable counts")
        return AutWord(self.n, self.gens + other.gens)

    @staticmethod
    def identity(n: int) -> "AutWord":
        return AutWord(n, ())

    def is_affine_word(self) -> bool:
        """True when every generator is affine or a transposition."""
        return all(not isinstance(g, Elementary) for g in self.gens)


@dataclass(frozen=True)
class PolyMap:
    """A coordinate tuple (f1,..,fn), each f_i a polynomial in n variables."""

    n: int
    coords: tuple

    def __post_init__(self):
        cs = tuple(self.coords)
        if len(cs) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(cs)}")
        for c in cs:
            if c.n != self.n:
                raise ValueError("coordinate has wrong variable count")
        object.__setattr__(self, "coords", cs)

    @staticmethod
    def identity(n: int) -> "PolyMap":
        return PolyMap(n, tuple(Polynomial.variable(i, n) for i in range(1, n + 1)))

    def is_identity(self) -> bool:
        return self == PolyMap.identity(self.n)

    def __getitem__(self, i: int) -> Polynomial:
        """Coordinate f_i, 1-based."""
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate index {i} out of range 1..{self.n}")
        return self.coords[i - 1]


def compose_map(outer: PolyMap, inner: PolyMap) -> PolyMap:
    """(outer o inner)(x) = outer(inner(x)): substitute inner into outer."""
    if outer.n != inner.n:
        raise ValueError("variable-count mismatch in map composition")
    return PolyMap(outer.n, tuple(compose(c, inner.coords) for c in outer.coords))


def generator_map(g: Generator) -> PolyMap:
    """The coordinate tuple of a single generator."""
    n = g.n
    if isinstance(g, Affine):
        coords = []
        for i in range(n):
            p = Polynomial.constant(g.shift[i], n)
            for j in range(n):
                a = g.matrix[i][j]
                if a:
                    p = p + Polynomial.variable(j + 1, n) * a
            coords.append(p)
        return PolyMap(n, tuple(coords))
    if isinstance(g, Elementary):
        coords = list(PolyMap.identity(n).coords)
        coords[g.target - 1] = coords[g.target - 1] + g.addend
        return PolyMap(n, tuple(coords))
    if isinstance(g, Transposition):
        coords = list(PolyMap.identity(n).coords)
        coords[g.i - 1], coords[g.j - 1] = coords[g.j - 1], coords[g.i - 1]
        return PolyMap(n, tuple(coords))
    raise TypeError(f"unknown generator {g!r}")


def expand(word: AutWord) -> PolyMap:
    """Expand a word to its coordinate tuple: G1 o G2 o .. o Gk.

    expand is a monoid homomorphism: expand(u + v) = expand(u) o expand(v),
    and expand of the empty word is the identity map.
    """
    result = PolyMap.identity(word.n)
    for g in word.gens:
        result = compose_map(result, generator_map(g))
    return result


def invert_generator(g: Generator) -> Generator:
    if isinstance(g, Affine):
        inv = _invert_matrix(g.matrix)
        shift = tuple(
            -sum(inv[i][j] * g.shift[j] for j in range(len(inv)))
            for i in range(len(inv))
        )
        return Affine(inv, shift)
    if isinstance(g, Elementary):
        return Elementary(g.target, -g.addend)
    return g  # transpositions are involutions


def invert_word(word: AutWord) -> AutWord:
    """Reversed word of inverted generators; composes with the word to identity."""
    return AutWord(word.n, tuple(invert_generator(g) for g in reversed(word.gens)))


def jacobian_constant(m: PolyMap) -> Fraction:
    """The Jacobian determinant of m, required to be a nonzero constant.

    Raises ZeroJacobian / NonConstantJacobian otherwise.  A nonzero constant
    Jacobian is necessary but (for n >= 2 inputs not built from words) not
    known to be sufficient for m to be an automorphism.
    """
    j = jacobian(m.coords)
    if j.is_zero():
        raise ZeroJacobian("jacobian determinant is identically zero")
    if not j.is_constant():
        raise NonConstantJacobian(f"jacobian determinant is not constant: {j}")
    return j.constant_value()


def word_jacobian(word: AutWord) -> Fraction:
    """Product of generator Jacobians: det for Affine, -1 for Transposition, 1 else."""
    mu = Fraction(1)
    for g in word.gens:
        if isinstance(g, Affine):
            mu *= _det_matrix(g.matrix)
        elif isinstance(g, Transposition):
            mu *= -1
    return mu


def deg2_weights(m: PolyMap, w1: WeightVector) -> WeightVector:
    """The weights d_i = wdeg(f_i, w1) of the degree induced by the map.

    Every coordinate must have positive weighted degree (in particular be
    nonzero and nonconstant), which holds for every automorphism.
    """
    if len(w1) != m.n:
        raise ValueError("weight vector length does not match map")
    ds = []
    for i, c in enumerate(m.coords, start=1):
        if c.is_zero():
            raise ValueError(f"coordinate {i} is zero")
        d = wdeg(c, w1)
        if d <= 0:
            raise ValueError(f"coordinate {i} has nonpositive degree {d}")
        ds.append(d)
    return WeightVector(tuple(ds))


# -- rational linear algebra helpers ---------------------------------------


def _det_matrix(m) -> Fraction:
    n = len(m)
    rows = [list(r) for r in m]
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        inv = Fraction(1) / rows[col][col]
        for r in range(col + 1, n):
            factor = rows[r][col] * inv
            if factor:
                for c in range(col, n):
                    rows[r][c] -= factor * rows[col][c]
    return det


def _invert_matrix(m) -> tuple:
    n = len(m)
    rows = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inv = Fraction(1) / rows[col][col]
        rows[col] = [a * inv for a in rows[col]]
        for r in range(n):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


# -- text formats -----------------------------------------------------------


def format_word(word: AutWord) -> str:
    lines = []
    for g in word.gens:
        if isinstance(g, Elementary):
            lines.append(f"E {g.target} {format_poly(g.addend)}")
        elif isinstance(g, Transposition):
            lines.append(f"T {g.i} {g.j}")
        else:
            entries = " ".join(str(a) for row in g.matrix for a in row)
            shift = " ".join(str(a) for a in g.shift)
            lines.append(f"A {entries} | {shift}")
    return "\n".join(lines)


def parse_word(text: str, n: int) -> AutWord:
    """Parse the one-generator-per-line word format."""
    gens = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        if kind == "E":
            idx_str, _, poly_str = rest.strip().partition(" ")
            try:
                target = int(idx_str)
            except ValueError:
                raise ValueError(f"bad elementary target in line {line!r}")
            gens.append(Elementary(target, parse_poly(poly_str, n)))
        elif kind == "T":
            parts = rest.split()
            if len(parts) != 2:
                raise ValueError(f"bad transposition line {line!r}")
            gens.append(Transposition(int(parts[0]), int(parts[1]), n))
        elif kind == "A":
            body, _, shift_str = rest.partition("|")
            entries = [Fraction(tok) for tok in body.split()]
            shift = [Fraction(tok) for tok in shift_str.split()]
            if len(entries) != n * n or len(shift) != n:
                raise ValueError(f"affine line needs {n * n} matrix entries and {n} shifts")
            matrix = tuple(tuple(entries[i * n : (i + 1) * n]) for i in range(n))
            gens.append(Affine(matrix, tuple(shift)))
        else:
            raise ValueError(f"unknown generator line {line!r}")
    return AutWord(n, tuple(gens))


def format_map(m: PolyMap) -> str:
    return "\n".join(format_poly(c) for c in m.coords)


def parse_map(text: str, n: int) -> PolyMap:
    """Parse n polynomial lines into a PolyMap."""
    lines = [line for line in (l.strip() for l in text.splitlines()) if line]
    if len(lines) != n:
        raise ValueError(f"expected {n} coordinate lines, got {len(lines)}")
    return PolyMap(n, tuple(parse_poly(line, n) for line in lines))
