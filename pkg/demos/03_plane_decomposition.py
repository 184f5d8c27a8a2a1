"""Decomposing plane automorphisms into elementary and affine pieces.

Every automorphism of the plane is tame.  The decomposition is driven by
one fact about the relation ideal: it is generated by z_a - c*z_b^r, so the
leading form of the higher-degree coordinate is c times a power of the
other one and can be cancelled by an elementary map, strictly dropping the
degree sum.  Failure of that cancellation on a non-affine pair therefore
*disproves* automorphy, which makes the same routine a decision procedure.

Run:  python demos/03_plane_decomposition.py
"""

import random

from polyaut import (
    decompose2,
    expand,
    format_map,
    format_poly,
    format_word,
    parse_map,
    relation2,
)
from polyaut.jvdk import Decomposition
from polyaut.verify import random_tame_word

m = parse_map("x1 + x2^2\nx2 + (x1 + x2^2)^3", 2)
print("input map:")
print("   " + format_map(m).replace("\n", "\n   "))
dec = decompose2(m)
print("generator word:")
for line in format_word(dec.word).splitlines():
    print("   " + line)
print("reduction log:")
for s in dec.steps:
    swap = "swap; " if s.swapped else ""
    print(
        f"   {swap}f <- f - ({s.c})*g^{s.r}   "
        f"degree sum {s.degree_sum_before} -> {s.degree_sum_after}"
    )
print(f"recomposes exactly: {expand(dec.word) == m}")
print(f"relation of the leading forms: {format_poly(relation2(m), var='z')}")
print()

# A perturbed map stops being an automorphism, and the same routine says so.
bad = parse_map("x1 + x2^2\nx2 + x1^2", 2)
print(f"perturbed map verdict: {decompose2(bad)}")
print()

# Round-trip a random word.
rng = random.Random(1)
word = random_tame_word(rng, 2, max_coord_deg=12)
m = expand(word)
dec = decompose2(m)
assert isinstance(dec, Decomposition) and expand(dec.word) == m
print(
    f"random word with {len(word)} generators: decomposed into "
    f"{len(dec.word)} generators, {len(dec.steps)} reduction steps"
)
