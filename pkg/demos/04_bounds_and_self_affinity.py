"""
Power-law envelopes and self-affinity
=====================================

For x/r, 1 - x/r with weights (p, 1-p) and min(p, 1-p) r >= 1, the CDF sits
between (x/(r-1))^e and x^e with e = log(1/p)/log(r).  It also satisfies
F(x / r^n) = p^n F(x).
"""

import numpy as np

from ifs_w1 import power_law_envelope, self_affine_check
from ifs_w1.staircase import flip_staircase

for r, p in ((2.1, 1 / 2.1), (3, 2 / 3)):
    F = flip_staircase(r, p, 1e-5)
    xs = F.gap_points(1e-300, 1.0)
    v, _ = F.eval_many(xs)
    lo, hi = np.array([power_law_envelope(r, p, x) for x in xs]).T
    print(f"r={r}, p={p:.4f}: {len(xs)} gap points, "
          f"min slack below {np.min(v - lo):.2e}, above {np.min(hi - v):.2e}")

for r, p in ((3, 1 / 3), (4, 1 / 4), (2.5, 0.3)):
    worst = max(self_affine_check(r, p, n) for n in range(1, 6))
    print(f"self-affinity r={r}, p={p}: max defect {worst:.1e}")
