"""
Where two staircases coincide
=============================

For x/3 and 1 - x/3 with weights (1/3, 2/3) and (2/3, 1/3), the two CDFs
are equal on a sequence of intervals accumulating at 9/10.  The intervals
come from iterating S(x, y) = (1 - x/9, 1 - (2/9) y).

Between the plateaus the sign of the difference is not as simple as
"positive below 9/10, negative above": this script counts both signs.
"""

from fractions import Fraction as Fr

import numpy as np

from ifs_w1.staircase import _segments, flip_staircase, plateau_intervals

p = Fr(1, 3)
seq = plateau_intervals(3, p, 4)
F = flip_staircase(3, float(p), 1e-5)
G = flip_staircase(3, float(1 - p), 1e-5)

print(" k            a_k            b_k        value   F(mid)          G(mid)")
for k, pl in enumerate(seq.plateaus):
    m = float(pl.a + pl.b) / 2
    print(f"{k:2d} {str(pl.a):>14} {str(pl.b):>14} {str(pl.value):>12}   "
          f"{F.eval(m).lo:.12f}  {G.eval(m).lo:.12f}")
print("limit:", seq.limit)

# sign of G - F at common gap points
left, right, g_lo, g_hi, f_lo, f_hi = _segments(G, F)
exact = (g_lo == g_hi) & (f_lo == f_hi) & (right - left > 1e-12)
x, d = ((left + right) / 2)[exact], (g_lo - f_lo)[exact]
for name, sel in (("below 9/10", x < 0.9), ("above 9/10", x > 0.9)):
    print(f"{name}: {np.sum(sel & (d > 0))} positive, {np.sum(sel & (d < 0))} negative, "
          f"{np.sum(sel & (d == 0))} zero")
