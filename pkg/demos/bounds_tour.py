#!/usr/bin/env python3
# A tour of the ramification-bound formulas.
#
# For a prime p and a weight bound i, the crystalline cutoff is
# 1 + alpha + beta with alpha the least integer with p^alpha > ip/(p-1)
# and beta = max(0, ip/(p^alpha (p-1)) - 1/(p-1)).  The semistable
# comparison value replaces the last term by -1/p^alpha and floors the
# max at 1/(p-1).  Everything below is an exact rational.

from padic_ramlab.bounds import (
    alpha, beta, bound_grid, crystalline_bound, semistable_bound, tate_exclusion,
)

print("weight-1 bounds at small primes")
for p in (2, 3, 5, 7):
    print(f"  p={p}: alpha={alpha(p,1)}  beta={beta(p,1)}  "
          f"crystalline={crystalline_bound(p,1)}  semistable={semistable_bound(p,1)}")

# For odd p and weight 1 the crystalline cutoff is exactly 2, while the
# p-torsion of the split multiplicative-reduction elliptic curve has
# splitting field Q_p(zeta_p, p^(1/p)) with mu = 2 + 1/(p-1) > 2.  The
# curve is semistable, not crystalline, and the bound separates the two.
print("\nexclusion of the multiplicative-reduction torsion point field")
for p in (3, 5, 7):
    r = tate_exclusion(p)
    verdict = "excluded" if r.excluded else "allowed"
    print(f"  p={p}: mu = {r.tate_mu} vs crystalline {r.crystalline} -> {verdict}")

# The crystalline value never exceeds the semistable one; the gap closes
# as i grows but never inverts.
print("\ncrystalline vs semistable across a grid (p=3)")
for row in bound_grid([3], 8):
    bar = "=" * int(4 * row["difference"])
    print(f"  i={row['i']:2d}  {row['crystalline']!s:>6} <= {row['semistable']!s:>6}"
          f"  gap {row['difference']!s:>5} {bar}")

assert all(r["difference"] >= 0 for r in bound_grid([2, 3, 5, 7, 11, 13], 50))
print("\ndominance checked exactly on 300 rows")
