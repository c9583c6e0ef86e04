#!/usr/bin/env python3
"""The two limit profiles and their preimage measures.

At a jump, the interpolation operators do not converge; their accumulation
values trace a universal profile of the fractional node offset.  For
Lagrange at Chebyshev nodes it is sin(pi x)/pi times the alternating Lerch
series; for Shepard with exponent s it is a ratio of Hurwitz zeta values.
Both map [0,1) onto (0,1], strictly decreasing, so the index of convergence
to an interval A in the irrational case is the length of the preimage.
"""
import numpy as np

from conidx import (
    Profile1D,
    Profile2D,
    hurwitz_zeta,
    lagrange_jump_profile,
    lerch_j1,
    preimage_measure_1d,
    preimage_measure_2d,
    shepard_jump_profile,
)

print("spot values")
print(f"  lerch_j1(1)      = {lerch_j1(1.0):.12f}   (ln 2 = 0.693147180560)")
print(f"  lerch_j1(1/2)    = {lerch_j1(0.5):.12f}   (pi/2 = 1.570796326795)")
print(f"  hurwitz(2, 1)    = {hurwitz_zeta(2.0, 1.0):.12f}   (pi^2/6 = 1.644934066848)")
print(f"  profile(1/2)     = {lagrange_jump_profile(0.5):.12f}")
print(f"  profile_s(2,1/2) = {shepard_jump_profile(2.0, 0.5):.12f}")

xs = np.linspace(0.0, 1.0, 1026)[1:-1]
refl = np.abs(lagrange_jump_profile(xs) + lagrange_jump_profile(1.0 - xs) - 1.0).max()
print(f"reflection identity max error on 1024 points: {refl:.2e}")

print("\nprofile values across [0, 1):")
for x in (0.0, 0.1, 1 / 3, 0.5, 2 / 3, 0.9):
    print(f"  x={x:0.4f}:  lagrange {lagrange_jump_profile(x):.6f}"
          f"   shepard s=2 {shepard_jump_profile(2.0, x):.6f}"
          f"   shepard s=4 {shepard_jump_profile(4.0, x):.6f}")

prof = Profile1D.lagrange()
for a, b in [(0.3, 0.6), (0.5, 1.0), (0.0, 0.25)]:
    m = preimage_measure_1d(prof, [(a, b)])
    print(f"measure of profile^-1([{a}, {b}]) = {m:.6f}")

prod = Profile2D(prof, prof)
m = preimage_measure_2d(prod, [(0.25, 1.0)])
print(f"plane measure of {{profile(x) profile(y) >= 1/4}} = {m:.6f}")
ident = Profile2D(Profile1D.identity(), Profile1D.identity())
m = preimage_measure_2d(ident, [(0.0, 0.5)])
print(f"plane measure of {{x y <= 1/2}} = {m:.6f}   ((1+ln 2)/2 = 0.846574)")
