"""
Three ways to the same distance
===============================

Two stationary measures of one positive, three-map system.  The moment
formula gives W1 exactly; integrating |F - G| over certified staircases
gives an enclosure; the chaos game gives a Monte Carlo estimate.
"""

from fractions import Fraction as Fr

from ifs_w1 import (Affine, IFSystem, WeightVector, build_staircase, chaos_game,
                    w1_closed_same_ifs, w1_empirical, w1_numeric)

# x/5, x/5 + 2/5, x/5 + 4/5, with exact coefficients
s = IFSystem([Affine(Fr(1, 5), 0), Affine(Fr(1, 5), Fr(2, 5)), Affine(Fr(1, 5), Fr(4, 5))])
p = WeightVector([Fr(1, 2), Fr(1, 4), Fr(1, 4)])
q = WeightVector([Fr(1, 4), Fr(1, 4), Fr(1, 2)])

print("validation:", s.report.as_dict())

# exact: a Fraction
print("closed form   :", w1_closed_same_ifs(s, p, q))

# certified: every cell carries at most 1e-6 of the mass
F, G = build_staircase(s, p, 1e-6), build_staircase(s, q, 1e-6)
print("staircases    :", len(F), "and", len(G), "cells")
print("numeric       :", w1_numeric(F, G))

# independent: no staircase involved
est, se = w1_empirical(chaos_game(s, p, 200_000, seed=0), chaos_game(s, q, 200_000, seed=1))
print(f"monte carlo   : {est:.5f} +- {se:.5f}")
