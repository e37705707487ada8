#!/usr/bin/env python3
# Modules over k[[q-1]]/(q-1)^N with semilinear Frobenius and Galois data.
#
# A height-i module carries a Frobenius matrix F that divides
# (q-1)^((p-1)i) in the matrix sense: verify_height produces the
# quasi-inverse V with F V = (q-1)^((p-1)i) Id by exact linear algebra.
# The Galois generator matrix G must be trivial mod (q-1) and commute
# with Frobenius semilinearly; iterating the operator (gamma - 1) then
# gains one power of (q-1) per step.

import random

from padic_ramlab.gf import FiniteFieldParams
from padic_ramlab.qring import QPoly
from padic_ramlab.wach import (
    WachModuleModP, gamma_power_containment, make_rank1_module, random_module,
    verify_gamma, verify_height,
)

K3 = FiniteFieldParams(3)

print("rank-1 module with F = (q-1)^(p-1) at p = 3")
M = make_rank1_module(3, 1, with_gamma=True)
w = verify_height(M)
print("  V =", w.V[0][0].terms_str(), " certified at truncation", w.slack)
print("  gamma report:", verify_gamma(M))

print("\na rank-2 module with an off-diagonal Frobenius")
N = 12
x2 = QPoly.monomial(K3, N, 2)
M2 = WachModuleModP(params=K3, trunc=N, rank=2, height=1,
                    F=((x2, x2), (QPoly.zero(K3, N), x2)))
w2 = verify_height(M2)
print("  V =", [[e.terms_str() for e in row] for row in w2.V])

print("\nheight claims are falsifiable: F = (q-1)^p exceeds height 1")
bad = WachModuleModP(params=K3, trunc=8, rank=1, height=1,
                     F=((QPoly.monomial(K3, 8, 3),),))
try:
    verify_height(bad)
except Exception as exc:
    print("  rejected:", exc)

# The operator (gamma - 1)^(p^s) applied to basis vectors lands in
# (q-1)^(p^s) M whenever G is trivial mod (q-1) and the generator
# exponent is wild (1 mod p).  Random modules at truncation 16:
print("\niterated containment on random modules")
rng = random.Random(5)
for trial in range(5):
    p = rng.choice([2, 3])
    module = random_module(rng, p, rank=2, height=1, trunc=16)
    levels = []
    s = 0
    while p**s + module.height_exponent < 16:
        levels.append((s, gamma_power_containment(module, s)))
        s += 1
    print(f"  p={p} u_G={module.u_g}: ", levels)
