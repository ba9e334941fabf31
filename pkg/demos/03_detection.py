"""From edges back to parameters.

Classification inverts generation: given one round of communication edges,
recover the family, stride, and grouping that produced it. A descriptor is
only reported when regenerating from it reproduces the input exactly;
anything else stays Unknown rather than guessing.
"""

import json

from traceglyph import (
    StencilSpec,
    canonicalize,
    classify_round,
    gen_stencil,
    generate_round,
    exchange_descriptor,
    offset_descriptor,
    ring_descriptor,
    same_stride,
)
from traceglyph.detect import classification_to_json
from traceglyph.timeline import CommRound

candidates = [
    offset_descriptor(1280, 4),
    offset_descriptor(1280, 2, 16),
    ring_descriptor(1280, 3, 8),
    exchange_descriptor(1280, 8),
]
print("== generation round-trips ==")
for descriptor in candidates:
    result = classify_round(generate_round(descriptor))
    doc = classification_to_json(result)
    print(f"  {descriptor.family:<9} -> {json.dumps(doc)}")
    assert canonicalize(result.result) == canonicalize(descriptor)

print("\n== the exchange/ring tie ==")
# A full-space swap i -> (i + 4) mod 8 is a stride-4 ring over 8 PEs and a
# pairwise exchange at the same time; the involution wins the tie.
tie = CommRound(0, tuple((i, (i + 4) % 8) for i in range(8)), 8)
print("  classified as:", classification_to_json(classify_round(tie)))
print("  canonicalize(ring stride 2, groups of 4):",
      canonicalize(ring_descriptor(8, 2, 4)).family)
print("  same stride, exchange 2 vs that ring:",
      same_stride(exchange_descriptor(8, 2), ring_descriptor(8, 2, 4)))

print("\n== structures with no clean parameters stay Unknown ==")
stencil_round = gen_stencil(StencilSpec((4, 4), 1))
print(" ", classification_to_json(classify_round(stencil_round)))

partial = CommRound(0, ((0, 1), (1, 0)), 4)  # half an exchange
print(" ", classification_to_json(classify_round(partial)))
