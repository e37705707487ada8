#!/usr/bin/env python3
# Ramification filtrations and their transition functions, exactly.
#
# Break data records the order of the filtration groups in the shifted
# numbering (the group at parameter s is the classical one at s-1).
# The transition function phi integrates the reciprocal index chain and
# is an increasing concave piecewise-linear function; psi is its exact
# inverse, and mu is phi at the last break: the upper-numbering level
# past which the filtration is trivial.

from fractions import Fraction

from padic_ramlab.ramify import (
    BreakData, cyclotomic_breaks, cyclotomic_relative_breaks,
    kummer_tate_breaks, mu, phi_fn, psi_fn, tower_mu,
)

print("the 9th cyclotomic field over the 3-adics")
data = cyclotomic_breaks(3, 2)
print("  breaks:", data.to_text())
phi = phi_fn(data)
print("  phi:   ", phi.to_text())
print("  phi(3) =", phi(3), "  mu =", mu(data), "  final slope =", phi.final_slope)

psi = psi_fn(phi)
print("  psi(2) =", psi(2), " and psi o phi is the identity:",
      psi.compose(phi).is_identity())

print("\nmu across the cyclotomic tower (rows p, columns n)")
for p in (2, 3, 5, 7):
    print(f"  p={p}: ", [str(mu(cyclotomic_breaks(p, n))) for n in range(1, 5)])

# The tower rule mu(L/E) = max(mu(F/E), phi_{F/E}(mu(L/F))) glues levels:
# climbing from the p^m-th to the p^n-th level reproduces mu directly.
print("\ntower rule across cyclotomic levels (p=3)")
for n in (2, 3, 4):
    for m in range(1, n):
        low = cyclotomic_breaks(3, m)
        rel = cyclotomic_relative_breaks(3, n, m)
        glued = tower_mu(mu(low), phi_fn(low), mu(rel))
        print(f"  levels {m} -> {n}: glued mu = {glued}, direct = "
              f"{mu(cyclotomic_breaks(3, n))}")

# The splitting field Q_p(zeta_p, p^(1/p)) of the p-torsion of the
# split multiplicative curve: wild break at p+1, mu = 2 + 1/(p-1).
print("\nthe multiplicative-reduction torsion field")
for p in (2, 3, 5, 7):
    kt = kummer_tate_breaks(p)
    print(f"  p={p}: {kt.to_text()}   mu = {mu(kt)}")

# User-supplied filtrations work the same way.
custom = BreakData(total_order=8, breaks=((Fraction(1), 4), (Fraction(5, 2), 2),
                                          (Fraction(4), 1)))
print("\ncustom filtration:", custom.to_text())
print("  mu =", mu(custom))
