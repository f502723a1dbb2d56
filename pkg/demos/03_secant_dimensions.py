"""Secant dimension probes: where the expected dimension is attained.

The span of the tangent spaces at k+1 general points computes the
dimension of the k-th secant variety.  A prime-field sample attaining
the expected dimension certifies the characteristic-0 value (rank can
only drop under specialization).  A shortfall is evidence, never proof,
and is escalated only across primes and seeds.
"""

from segreid import (
    DEFAULT_PRIMES,
    ProductShape,
    defect_status,
    expected_dim,
    secant_dim_probe,
)

print("binary products, all subcritical k:")
for m in (3, 4, 5, 6):
    s = ProductShape.binary(m)
    row = []
    k = 1
    while expected_dim(s, k) < s.ambient_dim:
        res = secant_dim_probe(s, k, seed=0)
        row.append(f"k={k}:{res.observed_dim}/{res.expected_dim}")
        k += 1
    print(f"  m={m}: " + ("  ".join(row) or "(already filling at k=1)"))

print()
print("the one shortfall above: m=4, k=2 (observed/expected = 13/14)")
grid = [
    secant_dim_probe(ProductShape.binary(4), 2, prime=prime, seed=seed)
    for prime in DEFAULT_PRIMES
    for seed in (0, 1, 2)
]
print(f"  replayed on {len(grid)} (prime, seed) cells:")
print(f"  observed dims: {sorted({r.observed_dim for r in grid})}")
print(f"  aggregated status: {defect_status(grid)!r}")
print("  (three primes and three seeds agreeing is what earns the label;")
print("   a single cell would only ever be a 'defect candidate')")
