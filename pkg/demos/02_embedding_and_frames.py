"""The coordinate-product embedding and its tangent frames.

A tuple of factor vectors maps to their iterated Kronecker product,
leftmost factor slowest.  The tangent space at a smooth point is spanned
by the single-slot substitutions: replace one factor by a basis vector,
keep the rest.  The affine frame drops the redundancy by freezing the
first coordinate of every factor.
"""

import numpy as np

from segreid import (
    COORDINATE_ORDER,
    DEFAULT_PRIMES,
    ProductShape,
    SplitMix64,
    affine_tangent_frame,
    ff_rank,
    segre_embed,
    substitution_vector,
    tangent_frame,
)

p = DEFAULT_PRIMES[0]
shape = ProductShape((1, 2))
print(f"shape {shape.factor_dims}: dim {shape.dim}, ambient P^{shape.ambient_dim}")
print(f"coordinate order: {COORDINATE_ORDER}")

q = (np.array([1, 2]), np.array([1, 3, 5]))
s = segre_embed(shape, q, p)
print(f"embed {tuple(f.tolist() for f in q)} -> {s.tolist()}")
print("  (index (i,j) lands at flat position i*3 + j)")

frame = tangent_frame(shape, q, p)
print(f"tangent frame: {frame.shape[0]} substitution rows, rank {ff_rank(frame, p)}")
for i in range(shape.num_factors):
    for j in range(shape.factor_dims[i] + 1):
        v = substitution_vector(shape, q, i, j, p)
        print(f"  slot ({i},{j}): {v.tolist()}")

aff = affine_tangent_frame(shape, q, p)
print(f"affine frame: {aff.shape[0]} rows (point + chart partials), rank {ff_rank(aff, p)}")
both = ff_rank(np.vstack([frame, aff]), p)
print(f"stacked rank: {both} (same span: the redundancy is the per-factor scaling)")

rng = SplitMix64(1)
big = ProductShape((2, 2, 3))
pt = tuple(
    np.array([rng.nonzero_residue(p) for _ in range(n + 1)], dtype=np.int64)
    for n in big.factor_dims
)
fr = tangent_frame(big, pt, p)
print(
    f"shape {big.factor_dims}: frame {fr.shape[0]} rows in {fr.shape[1]} coordinates,"
    f" rank {ff_rank(fr, p)} = 1 + {big.dim}"
)
