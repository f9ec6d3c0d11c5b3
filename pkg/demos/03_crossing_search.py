"""
Exact search for equal prefix sums
==================================

Order the binary words of length n by the twisted order (level K_n), weight
each word by p^{#1} (1-p)^{#2}, and compare running sums for p and 1 - p.
With p = 1/(2k+1) everything is an integer after scaling by (2k+1)^n.
"""

from ifs_w1.symbolic import build_level, crossing_equation_search, lemma_range

print("K_3:", " ".join(build_level(3).as_strings()))

for k in (1, 2, 3):
    matches = crossing_equation_search(k, 10)
    boundary = [m for m in matches if m.i == lemma_range(m.n) + 1]
    inside = [m for m in matches if m.i <= lemma_range(m.n)]
    print(f"\np = 1/{2 * k + 1}: {len(matches)} matches up to n = 10")
    print("  at i = 2^n - 2^(n-2):", ", ".join(f"n={m.n}:{m.value}" for m in boundary))
    print("  at smaller i        :", ", ".join(f"(n={m.n}, i={m.i}, {m.value})" for m in inside[:6]),
          "..." if len(inside) > 6 else "")
