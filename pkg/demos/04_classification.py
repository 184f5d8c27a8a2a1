"""The fourteen shapes of principal relation generators in three variables.

With ascending integer weights d1 <= d2 <= d3 and the x3-shift
x3' = x3 + h(x1,x2), a principal relation generator is proportional to one
of fourteen patterns, or it falls in the six-entry forbidden list (shapes
whose coordinate ring admits no nonzero locally nilpotent derivation and
which therefore never occur).  Each classified shape is then moved by an
explicitly verified tame witness word to one of the four canonical forms
0, x3, x1^r + x2^s, x1^k*x3 + P(x1,x2).

Run:  python demos/04_classification.py
"""

import random

from polyaut import (
    NeedsExtension,
    Tag,
    WeightVector,
    classify,
    expand,
    format_poly,
    format_word,
    normalize,
    parse_poly,
    sample_classified,
)
from polyaut.polycore import compose


def demo(text, weights):
    R = parse_poly(text, 3)
    d = WeightVector(weights)
    out = classify(R, d)
    print(f"R = {text},  d = {weights}")
    kind = type(out).__name__
    if kind != "Classified":
        print(f"   -> {out}")
        print()
        return
    rt = out.info
    print(f"   tag {rt.tag.value}; shift h = {format_poly(rt.shift_h)}")
    nf = normalize(rt)
    if isinstance(nf, NeedsExtension):
        print(f"   normal form needs an extension: {nf.reason}")
    else:
        print(
            f"   canonical form {format_poly(nf.canonical_poly)} "
            f"(residual scalar {nf.residual_scalar})"
        )
        check = compose(R, expand(nf.witness).coords)
        assert check == nf.canonical_poly * nf.residual_scalar
        print("   witness word (verified by exact composition):")
        lines = format_word(nf.witness).splitlines() or ["(identity)"]
        for line in lines:
            print(f"      {line}")
    print()


demo("x3^2 + 5*x2^3", (1, 2, 3))
demo("x2^2 + x1*x3", (1, 3, 5))  # the Nagata relation, weights ascending
demo("(x2 + 2*x1)*x3 + 3*x1^4", (1, 1, 3))
demo("x3^2 + x1^3 - 4*x2^2", (2, 3, 3))  # rational square: full reduction
demo("x3^2 + x1^3 + 2*x2^2", (2, 3, 3))  # needs sqrt(-2): honest refusal
demo("x3^2 + x1^4 + x2^3", (3, 4, 6))    # forbidden: no LND exists

# One random instance of every nonzero line.
rng = random.Random(0)
print("sampled round trip over all lines:")
for tag in Tag:
    if tag is Tag.ZERO:
        continue
    R, d = sample_classified(tag, rng)
    out = classify(R, d)
    assert out.info.tag is tag
    print(f"   {tag.value:<20} {format_poly(R)}")
