#!/usr/bin/env python3
"""Warm-up: the index of convergence of x[n,m] = cos(n pi/2) cos(m pi/2).

The double sequence takes the value 0 whenever n or m is odd (3/4 of all
pairs), and the values +1 and -1 on 1/8 of the pairs each.  The index of
convergence recovers exactly those fractions: it is the infimum over eps of
the lower density of the indices whose value falls in the eps-neighborhood
of the target.
"""
import numpy as np

from conidx import SeqWindow, Target, default_checkpoints, index_to_target

N = 2000
n = np.arange(1, N + 1)
factor = np.where(n % 2 == 1, 0.0, np.where(n % 4 == 0, 1.0, -1.0))

# the sequence is a declared product, so the window stores the two factor
# arrays and 2-d hit counting never materializes the N x N matrix
window = SeqWindow.from_product(factor, factor)
checkpoints = default_checkpoints(N)

print(f"window: {N} x {N} pairs, checkpoints {checkpoints[0]}..{checkpoints[-1]}")
for target, expected in ((0.0, 3 / 4), (1.0, 1 / 8), (-1.0, 1 / 8)):
    rep = index_to_target(window, Target.point(target), epsilon=0.1,
                          checkpoints=checkpoints)
    print(f"  index to {target:+.0f}: estimated {rep.estimate.lower_est:.4f}"
          f"   (exact value {expected})")

# a divergent sequence has index 1 to +infinity: the estimate is the infimum
# over a cutoff grid of the density of {n : x_n > M}
divergent = SeqWindow.from_values_1d(np.arange(1, 5001, dtype=float))
rep = index_to_target(divergent, Target.plus_infinity(), None,
                      default_checkpoints(5000), cutoffs=[10.0])
print(f"index of x_n = n to +inf (cutoff 10): {rep.estimate.lower_est:.4f}")
