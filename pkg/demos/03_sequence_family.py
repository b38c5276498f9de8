"""Generate the q = 81 family and look at its structure.

Run: python demos/03_sequence_family.py
"""

import numpy as np

from ellseq import Mode, build_family
from ellseq.analysis import duplicate_audit

fam = build_family(3, 4, -1, 2)
print("family:", fam.sequences.shape, "place", fam.place.serialize())
for i in range(3):
    print(f"z_{i} = {fam.function(i).serialize():<28}", "".join(map(str, fam.sequences[i][:60])), "...")

# scaling z by a nonzero square leaves eta(z) unchanged, so bit-vectors repeat
print("distinct bit-vectors:", fam.distinct_count(), " audit:", duplicate_audit(fam))
dedup = build_family(3, 4, -1, 2, Mode.DEDUPED)
print("deduplicated family size:", dedup.size)
print("every sequence starts with 0:", not fam.sequences[:, 0].any())
# multiplying z by a non-square flips eta wherever z does not vanish
print("positions where the two classes differ:", np.count_nonzero(dedup.sequences[0] ^ dedup.sequences[1]), "of", fam.N)
