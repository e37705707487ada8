#!/usr/bin/env python3
# The Frobenius fixed-point solvers at desk scale.
#
# Over the truncated tilt ring, solutions of phi(x) = x F form a finite
# F_p-vector space.  Approximate solutions with defect valuation above
# a = pi/(p-1) lift to exact ones by a contraction whose defect
# valuation gains at least h per iterate; brute-force enumeration at a
# small cut provides the independent oracle the solver is checked
# against.

from fractions import Fraction

from padic_ramlab.frobsolve import (
    PhiVector, SolverParams, character_of, compute_tstar,
    compute_tstar_untilted, contraction_lift, enumerate_jc, galois_act_jc,
)
from padic_ramlab.tiltring import RingSpec, ValuedTrunc
from padic_ramlab.wach import make_rank1_module

p, i = 3, 1
module = make_rank1_module(p, i, with_gamma=True)
probe = RingSpec(module.params, "tilt", 1, Fraction(1))
params = SolverParams.for_tilt(p, i, probe)
print(f"thresholds at (p, i) = ({p}, {i}): b = {params.b}, a = {params.a}, "
      f"working cut = {params.c_work}, per-iterate gain h = {params.h}")

spec = RingSpec(module.params, "tilt", 1, params.c_work + 3)

# Start from the approximate solution pi + pi^4 + pi^9 and watch the
# defect valuation climb until the equation holds exactly at the cut.
x0 = PhiVector(spec, (ValuedTrunc(spec, {1: 1, 4: 1, 9: 1}),))
lift = contraction_lift(module, spec, x0, params=params)
print("\ncontraction transcript (defect valuations):")
for v in lift.transcript:
    print("  ", v)
print("lifted solution:", lift.solution.to_text())

# The full solution space: p elements, one line, carrying the i-th
# power of the mod-p cyclotomic character.
tstar = compute_tstar(module, spec, budget=10**6, params=params)
print(f"\n|T*| = {len(tstar)} (rank {tstar.rank}):",
      [v.to_text() for v in tstar.solutions])
print("character exponent read off a generator:", character_of(tstar, 2))
print("stored Galois generator permutes the set:",
      {galois_act_jc(module, v) for v in tstar.solutions} == set(tstar.solutions))

# Oracle route: enumerate every vector at cut a and reduce to cut b;
# the image coincides with the reduction of the lifted solutions.
oracle = enumerate_jc(module, spec.with_cut(params.a), budget=10**6)
red_oracle = {v.reduce_to(params.b) for v in oracle.elements}
red_tstar = {v.reduce_to(params.b) for v in tstar.solutions}
print(f"\noracle solutions at cut a: {len(oracle)}; "
      f"reductions at b match the solver: {red_oracle == red_tstar}")

# The untilted ring at level s (needs p^s > a) tells the same story
# with theta = zeta_{p^(s+1)} - 1 as the uniformizer.
pu = SolverParams.for_untilted(p, i, 1)
spec_u = RingSpec(module.params, "untilted", 1, pu.c_work * pu.ring_scale)
unt = compute_tstar_untilted(module, spec_u, budget=10**6, params=pu)
print("\nuntilted solutions at level 1:", [v.to_text() for v in unt.solutions])
