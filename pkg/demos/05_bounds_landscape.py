"""The k landscape for binary products, in closed form.

Three integer bounds govern each m: the dimension-count ceiling k_max,
the certified product bound, and the comparison bound in two rewritings
that disagree by one near powers of two.  Everything here is pure
integer arithmetic, so large m costs nothing.
"""

from segreid import (
    Regime,
    classify,
    k_max,
    log_ceiling_bound_max_k,
    product_bound_max_k,
    regime_report,
    sqrt_bound_max_k_plus_1,
)

print(f"{'m':>3} {'k_max':>8} {'product':>8} {'log-ceil':>8} {'sqrt(k+1)':>9}")
for m in range(6, 17):
    print(
        f"{m:>3} {k_max(m):>8} {product_bound_max_k(m):>8}"
        f" {log_ceiling_bound_max_k(m):>8} {sqrt_bound_max_k_plus_1(m):>9}"
    )

print()
print("sample cells:")
for m, k in [(10, 50), (10, 51), (10, 92), (10, 93), (5, 4), (4, 2), (6, 9)]:
    print(f"  (m={m}, k={k}) -> {classify(m, k).value}")

print()
rep = regime_report(10, 16)
print(f"regime report for (m=10, k=16): {rep.regime.value} (product bound covers it)")
print(f"  the two comparison forms disagree about this cell:")
print(f"  log-ceiling max k {rep.log_ceiling_bound_max_k} excludes k=16,")
print(f"  while the sqrt form allows k+1 up to {rep.sqrt_bound_max_k_plus_1}")
print(f"  note: {rep.notes[0]}")

assert classify(10, 16) is Regime.THEOREM_IDENTIFIABLE
