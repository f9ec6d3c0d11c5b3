"""The alternating order on binary words and the exact crossing search.

For the pair ``x/r, 1 - x/r`` the cylinders of a fixed length are laid out on
the line not lexicographically but by the order ``prec``: at the first
disagreement after a common prefix ``u`` the word carrying ``1`` comes first
iff ``u`` holds an even number of ``2``s.  ``build_level(n)`` lists
``{1,2}^n`` in that order.

All arithmetic on weights here is exact (:class:`fractions.Fraction` or plain
integers); parity arguments do not survive rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .maps import Word, compose_point, flip_system, format_word

MAX_LEVEL = 24

LESS, EQUAL, GREATER = -1, 0, 1


def _check_binary(w: Word):
    for a in w:
        if a not in (1, 2):
            raise ValueError(f"non-binary symbol {a!r} in {w!r}")


def prec_compare(a: Word, b: Word) -> int:
    """Compare two binary words; returns ``LESS``, ``EQUAL`` or ``GREATER``.

    A proper prefix is smaller than its extensions.
    """
    _check_binary(a)
    _check_binary(b)
    twos = 0
    for x, y in zip(a, b):
        if x != y:
            first_wins = (x == 1) == (twos % 2 == 0)
            return LESS if first_wins else GREATER
        twos += x == 2
    if len(a) == len(b):
        return EQUAL
    return LESS if len(a) < len(b) else GREATER


def prec_key(w: Word):
    """Sort key realising ``prec`` on words of one fixed length."""
    twos = 0
    key = []
    for x in w:
        key.append(x if twos % 2 == 0 else 3 - x)
        twos += x == 2
    return tuple(key)


@dataclass(frozen=True)
class OrderedLevel:
    """``{1,2}^n`` in ascending ``prec`` order."""

    n: int
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def counts(self):
        """Arrays ``(#1, #2)`` per entry, in level order."""
        twos = np.array([sum(a == 2 for a in w) for w in self.entries], dtype=np.int64)
        return self.n - twos, twos

    def as_strings(self):
        return [format_word(w) for w in self.entries]


def build_level(n: int) -> OrderedLevel:
    """Build the ordered level of length-``n`` binary words recursively.

    Odd positions (1-based) of level ``n`` spawn ``w1, w2``; even positions
    spawn ``w2, w1``.  Memory grows as ``n * 2**n``; ``n`` is capped at 24.
    """
    if not (isinstance(n, (int, np.integer)) and 1 <= n <= MAX_LEVEL):
        raise ValueError(f"level n must be an integer in 1..{MAX_LEVEL}, got {n!r}")
    level = [(1,), (2,)]
    for _ in range(n - 1):
        nxt = []
        for i, w in enumerate(level, start=1):
            if i % 2:
                nxt += [w + (1,), w + (2,)]
            else:
                nxt += [w + (2,), w + (1,)]
        level = nxt
    return OrderedLevel(n, tuple(level))


def word_weight(p, w: Word):
    """Product of the component weights along ``w``.

    ``p`` is either a scalar (the weight of symbol 1 in a two-symbol system)
    or a sequence of per-symbol weights.
    """
    if isinstance(p, (int, float, Fraction)):
        weights = (p, 1 - p)
    else:
        weights = tuple(p)
    out = 1
    for a in w:
        out *= weights[a - 1]
    return out


def prefix_sums(level: OrderedLevel, p) -> list:
    """Cumulative weights ``sum_{j<=i} p_{x_j}`` along the level.

    With a rational ``p`` the result is exact and its last entry is 1.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    ones, twos = level.counts()
    # common denominator keeps everything in integers
    num, den = p.numerator, p.denominator
    a, b = num, den - num
    pa = [a ** j for j in range(level.n + 1)]
    pb = [b ** j for j in range(level.n + 1)]
    total = 0
    out = []
    denom = den ** level.n
    for o, t in zip(ones.tolist(), twos.tolist()):
        total += pa[o] * pb[t]
        out.append(Fraction(total, denom))
    return out


@dataclass(frozen=True)
class CrossingMatch:
    n: int
    i: int
    value: Fraction


def crossing_equation_search(k: int, n_max: int, n_min: int = 1,
                             i_max=None, include_total: bool = False) -> list:
    """Exhaustive exact search for equal prefix sums of ``p`` and ``1 - p``.

    ``p = 1/(2k+1)``.  For every level ``n`` in ``n_min..n_max`` and every
    ``i`` this compares ``sum_{j<=i} p_{x_j}`` with ``sum_{j<=i} (1-p)_{x_j}``.
    Scaling by ``(2k+1)^n`` turns both sides into integers
    ``sum (2k)^{#2}`` and ``sum (2k)^{#1}``.

    Parameters
    ----------
    i_max : callable or None
        Optional ``n -> largest i to examine``.
    include_total : bool
        The full sum ``i = 2**n`` always matches (both sides are 1); it is
        skipped unless requested.
    """
    if not (isinstance(k, int) and k >= 1):
        raise ValueError("k must be a positive integer")
    if not (1 <= n_min <= n_max <= 20):
        raise ValueError("need 1 <= n_min <= n_max <= 20")
    odd = 2 * k + 1
    even = 2 * k
    matches = []
    for n in range(n_min, n_max + 1):
        ones, twos = build_level(n).counts()
        stop = 2 ** n if include_total else 2 ** n - 1
        if i_max is not None:
            stop = min(stop, i_max(n))
        pw = [even ** j for j in range(n + 1)]
        lhs = rhs = 0
        for i in range(stop):
            lhs += pw[twos[i]]
            rhs += pw[ones[i]]
            if lhs == rhs:
                matches.append(CrossingMatch(n, i + 1, Fraction(lhs, odd ** n)))
    return matches


def lemma_range(n: int) -> int:
    """Largest index ``2^n - 2^(n-2) - 1`` covered by the no-crossing claim."""
    return 2 ** n - 2 ** (n - 2) - 1


def segment_symmetry_check(n: int, p) -> bool:
    """Multiset identity between the two leading segments of a level.

    Entries ``1..m`` with ``m = 2^(n-1) - 2^(n-3)`` weighted by ``p`` must
    coincide, as a multiset, with entries ``m+1..2^n - 2^(n-2)`` weighted by
    ``1 - p``; and the same with the roles of ``p`` and ``1 - p`` swapped.
    Compared on exponent pairs, so the answer holds for every ``p``; ``p``
    is evaluated too so that degenerate values are reported faithfully.
    """
    if n < 3:
        raise ValueError("segment symmetry needs n >= 3")
    p = Fraction(p)
    ones, twos = build_level(n).counts()
    m = 2 ** (n - 1) - 2 ** (n - 3)
    end = 2 ** n - 2 ** (n - 2)

    def weights(sel, flip):
        out = []
        for o, t in zip(ones[sel].tolist(), twos[sel].tolist()):
            out.append(p ** t * (1 - p) ** o if flip else p ** o * (1 - p) ** t)
        return sorted(out)

    first, second = slice(0, m), slice(m, end)
    return (weights(first, False) == weights(second, True)
            and weights(first, True) == weights(second, False))


def geometric_order_check(r: float, n: int) -> bool:
    """Do the level-``n`` cylinders of ``x/r, 1-x/r`` sit on the line in level order?

    Checks every pair: for ``i < j`` the ``i``-th cylinder must lie strictly
    left of the ``j``-th.
    """
    if not r > 2:
        raise ValueError("needs r > 2")
    if not 1 <= n <= 12:
        raise ValueError("needs 1 <= n <= 12")
    s = flip_system(float(r))
    level = build_level(n)
    lo = np.empty(len(level))
    hi = np.empty(len(level))
    for idx, w in enumerate(level):
        a, b = compose_point(s, w, 0.0), compose_point(s, w, 1.0)
        lo[idx], hi[idx] = min(a, b), max(a, b)
    # sup of the i-th < inf of the j-th for all i < j
    running_max_hi = np.maximum.accumulate(hi)
    return bool(np.all(running_max_hi[:-1] < lo[1:]))


def level_parities_ok(level: OrderedLevel) -> bool:
    """Odd positions carry an even number of 2s, even positions an odd number."""
    _, twos = level.counts()
    pos = np.arange(1, len(level) + 1)
    return bool(np.all(twos % 2 == (pos + 1) % 2))


def twos_count(w: Iterable[int]) -> int:
    return sum(a == 2 for a in w)


def sorted_by_prec(words: Sequence[Word]) -> list:
    """Sort words of a common length by ``prec``."""
    return sorted(words, key=prec_key)
