"""Certified staircase approximations of stationary-measure CDFs.

When the images of the maps are disjoint, the CDF of the stationary measure
is constant on every gap between cylinders and is known there exactly: it is
the total mass of the cylinders to the left.  A :class:`Staircase` keeps a
sorted list of cylinder cells, each no heavier than ``resolution``.  Outside
the cells the CDF is exact; inside a cell it is enclosed by
``[cum_left, cum_left + mass]``.

Cells are generated by prepending symbols: the set of words kept is closed
under dropping the first letter, so a whole generation is produced by pushing
the previous generation through each map with array operations.
"""

from __future__ import annotations

import enum
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .intervals import ValueInterval
from .maps import (EPS, DomainError, HypothesisViolation, IFSystem, WeightVector,
                   cantor_system, flip_system)

DEFAULT_RESOLUTION = 1e-6
DEFAULT_MAX_CELLS = 2 ** 22
GAP_TOL = 1e-12


class OverlapError(ValueError):
    """The images of the maps overlap; the staircase is not defined."""


class ResourceError(RuntimeError):
    """Refinement would exceed the configured cell budget."""


@dataclass(frozen=True, eq=False)
class Staircase:
    system: IFSystem
    weights: WeightVector
    resolution: float
    lo: np.ndarray
    hi: np.ndarray
    mass: np.ndarray
    cum_left: np.ndarray
    depth: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.lo)

    @property
    def cum_right(self) -> np.ndarray:
        return self.cum_left + self.mass

    @property
    def total_mass(self) -> float:
        return float(self.cum_left[-1] + self.mass[-1])

    @property
    def max_mass(self) -> float:
        return float(self.mass.max())

    @property
    def cell_budget(self) -> float:
        """``sum(width * mass)``: bound on the area hidden inside cells."""
        return float(np.sum((self.hi - self.lo) * self.mass))

    def gaps(self):
        """Arrays ``(left, right, value)`` of the open gaps between cells."""
        left = np.concatenate([[0.0], self.hi])
        right = np.concatenate([self.lo, [1.0]])
        value = np.concatenate([[0.0], self.cum_right])
        keep = right > left
        return left[keep], right[keep], value[keep]

    def gap_points(self, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
        """Midpoints of the gaps lying inside ``[lo, hi]``."""
        left, right, _ = self.gaps()
        mid = (left + right) / 2
        return mid[(mid >= lo) & (mid <= hi)]

    def eval(self, x) -> ValueInterval:
        return eval_cdf(self, x)

    def eval_many(self, xs):
        return _eval_arrays(self, np.asarray(xs, dtype=float))


def build_staircase(s: IFSystem, p: WeightVector, resolution: float = DEFAULT_RESOLUTION,
                    max_cells: int = DEFAULT_MAX_CELLS) -> Staircase:
    """Refine cylinders of ``s`` until every cell carries mass ``<= resolution``.

    Raises
    ------
    OverlapError
        if two map images overlap in their interiors.
    ResourceError
        if more than ``max_cells`` cells would be produced.
    """
    if len(p) != s.k:
        raise ValueError(f"{len(p)} weights for {s.k} maps")
    if not s.disjoint_open_images:
        raise OverlapError("images of the maps overlap; no staircase")
    if not 0 < resolution <= 1:
        raise ValueError("resolution must lie in (0, 1]")
    w = p.as_array()

    # generation 1: the k first-level cylinders
    lo0 = np.empty(s.k)
    hi0 = np.empty(s.k)
    for i, m in enumerate(s):
        a, b = m.image
        lo0[i], hi0[i] = float(a), float(b)
    gen_lo, gen_hi, gen_mass = lo0, hi0, w.copy()
    gen_parent = np.ones(s.k)

    out_lo, out_hi, out_mass, out_depth = [], [], [], []
    n_out = 0
    depth = 1
    while len(gen_lo):
        final = gen_mass <= resolution
        if depth == 1:
            final = final | (resolution >= 1)
        out_lo.append(gen_lo[final])
        out_hi.append(gen_hi[final])
        out_mass.append(gen_mass[final])
        out_depth.append(np.full(int(final.sum()), depth, dtype=np.int32))
        n_out += int(final.sum())
        if n_out > max_cells:
            raise ResourceError(f"more than {max_cells} cells at resolution {resolution:g}")
        if resolution >= 1:
            break
        nxt_lo, nxt_hi, nxt_mass, nxt_parent = [], [], [], []
        for i, m in enumerate(s):
            # word i.w is kept iff its parent i.w[:-1] still exceeds the resolution
            sel = gen_parent * w[i] > resolution
            if not sel.any():
                continue
            a = m.apply(gen_lo[sel])
            b = m.apply(gen_hi[sel])
            if m.sign < 0:
                a, b = b, a
            nxt_lo.append(a)
            nxt_hi.append(b)
            nxt_mass.append(gen_mass[sel] * w[i])
            nxt_parent.append(gen_parent[sel] * w[i])
        if not nxt_lo:
            break
        gen_lo = np.concatenate(nxt_lo)
        gen_hi = np.concatenate(nxt_hi)
        gen_mass = np.concatenate(nxt_mass)
        gen_parent = np.concatenate(nxt_parent)
        if len(gen_lo) > 4 * max_cells:
            raise ResourceError(f"refinement frontier exceeds {4 * max_cells} words")
        depth += 1

    lo = np.concatenate(out_lo)
    hi = np.concatenate(out_hi)
    mass = np.concatenate(out_mass)
    dep = np.concatenate(out_depth)
    order = np.lexsort((hi, lo))
    lo, hi, mass, dep = lo[order], hi[order], mass[order], dep[order]
    cum = np.cumsum(mass.astype(np.longdouble))
    cum_left = np.concatenate([[0.0], cum[:-1].astype(float)])
    return Staircase(s, p, float(resolution), lo, hi, mass, cum_left, dep)


def _eval_arrays(F: Staircase, xs: np.ndarray):
    if np.any((xs < -EPS) | (xs > 1 + EPS)):
        raise DomainError("points outside [0, 1]")
    j = np.searchsorted(F.lo, xs, side="right") - 1
    jc = np.clip(j, 0, len(F) - 1)
    cum_l = np.where(j >= 0, F.cum_left[jc], 0.0)
    cum_r = np.where(j >= 0, F.cum_left[jc] + F.mass[jc], 0.0)
    inside = (j >= 0) & (xs <= F.hi[jc])
    lower = np.where(inside, cum_l, cum_r)
    upper = cum_r.copy()
    # cell endpoints carry exact values
    at_left = inside & (xs == F.lo[jc])
    at_right = inside & (xs == F.hi[jc])
    upper = np.where(at_left, cum_l, upper)
    lower = np.where(at_right, cum_r, lower)
    return lower, upper


def eval_cdf(F: Staircase, x: float) -> ValueInterval:
    """Enclosure of the CDF at ``x``; degenerate on gaps."""
    if x < -EPS or x > 1 + EPS:
        raise DomainError(f"x={x!r} is outside [0, 1]")
    lower, upper = _eval_arrays(F, np.array([float(x)]))
    return ValueInterval(float(lower[0]), float(upper[0]))


def first_moment_closed(s: IFSystem, p: WeightVector):
    """Mean of the stationary measure of an affine system.

    Returns ``sum(p_i t_i) / (1 - sum(p_i rho_i))`` with slopes ``rho_i``
    and intercepts ``t_i``; exact when all inputs are rationals.
    """
    if not s.is_affine:
        raise TypeError("closed-form moment needs affine maps")
    if len(p) != s.k:
        raise ValueError(f"{len(p)} weights for {s.k} maps")
    num = sum(w * m.intercept for w, m in zip(p, s))
    den = 1 - sum(w * m.slope for w, m in zip(p, s))
    if all(isinstance(v, (int, Fraction)) for v in (num, den)):
        return Fraction(num) / Fraction(den)
    return num / den


@dataclass(frozen=True)
class Identity:
    """Cost ``c(x) = x``."""


@dataclass(frozen=True)
class SignedIdentity:
    """Cost ``-x`` left of ``threshold`` and ``+x`` from ``threshold`` on."""

    threshold: float


def integrate_against(F: Staircase, cost) -> ValueInterval:
    """Enclosure of ``integral cost(x) dmu(x)``.

    Gaps carry no mass.  Each cell contributes ``mass * [min c, max c]``
    over the cell; a cell straddling the threshold of a
    :class:`SignedIdentity` contributes ``mass * [-threshold, hi]``.
    """
    lo, hi, m = F.lo, F.hi, F.mass
    if isinstance(cost, Identity):
        cmin, cmax = lo, hi
    elif isinstance(cost, SignedIdentity):
        t = float(cost.threshold)
        left = hi < t
        right = lo >= t
        cmin = np.where(left, -hi, np.where(right, lo, -t))
        cmax = np.where(left, -lo, hi)
    else:
        raise TypeError(f"unknown cost descriptor {cost!r}")
    slack = 4 * np.finfo(float).eps * len(m)
    return ValueInterval(float(np.dot(m, cmin)) - slack, float(np.dot(m, cmax)) + slack)


def power_law_envelope(r: float, p: float, x: float):
    """Lower and upper power-law bounds for the staircase of ``x/r, 1-x/r``.

    Bounds are ``(x/(r-1))**e`` and ``x**e`` with ``e = log(1/p)/log(r)``.
    Requires ``min(p, 1-p) * r >= 1``.
    """
    r, p = float(r), float(p)
    if not (0 < p < 1 and r > 1):
        raise ValueError("need 0 < p < 1 and r > 1")
    if min(p, 1 - p) * r < 1 - GAP_TOL:
        raise HypothesisViolation("envelope", "min_weight_times_r", f"min(p, 1-p) * r = {min(p, 1 - p) * r:.12g} < 1")
    if not 0 < x <= 1 + EPS:
        raise DomainError(f"x={x!r} is outside (0, 1]")
    e = math.log(1 / p) / math.log(r)
    return (x / (r - 1)) ** e, x ** e


def _flip_staircase(r, p, resolution):
    return build_staircase(flip_system(float(r)), WeightVector([float(p), 1 - float(p)]), resolution)


def self_affine_check(r: float, p: float, n: int, samples: int = 200,
                      resolution: float | None = None, fine: Staircase | None = None,
                      seed: int = 0) -> float:
    """Largest ``|F(x / r**n) - p**n * F(x)|`` over gap points ``x`` in ``[1/r, 1]``.

    ``F`` is the CDF of ``x/r, 1-x/r`` with weights ``(p, 1-p)``.  Sample
    points are gaps of a coarse staircase, so both ``x`` and ``x / r**n`` are
    gaps of the fine one and the comparison is between exact values.  A
    sample that nonetheless falls in a cell contributes its enclosure width.
    """
    if not r > 2:
        raise ValueError("needs r > 2")
    if not 0 < p < 1:
        raise ValueError("needs 0 < p < 1")
    if n == 0:
        return 0.0
    pn = float(p) ** n
    if fine is None:
        resolution = resolution or min(1e-3 * pn, 1e-4)
        fine = _flip_staircase(r, p, resolution)
    coarse_res = min(fine.resolution / pn, 1.0)
    coarse = _flip_staircase(r, p, coarse_res)
    pts = coarse.gap_points(1 / float(r), 1.0)
    if len(pts) == 0:
        raise ValueError("no gap points in [1/r, 1]; lower the resolution")
    if len(pts) > samples:
        rng = np.random.default_rng(seed)
        pts = np.sort(rng.choice(pts, samples, replace=False))
    f_lo, f_hi = fine.eval_many(pts)
    s_lo, s_hi = fine.eval_many(pts / float(r) ** n)
    defect = np.maximum(np.abs(s_hi - pn * f_lo), np.abs(s_lo - pn * f_hi))
    return float(defect.max())


def stationarity_residual(F: Staircase, xs) -> float:
    """Largest residual of the self-similarity identity at the points ``xs``.

    For ``x`` inside the image of map ``j``,
    ``F(x) = sum_{images left of x} p_i + p_j F(f_j^{-1} x)`` (increasing
    ``f_j``) or ``... + p_j (1 - F(f_j^{-1} x))`` (decreasing ``f_j``).
    Points in a first-level gap are checked against the plain sum.
    """
    s, p = F.system, F.weights
    worst = 0.0
    images = [tuple(map(float, m.image)) for m in s]
    for x in np.asarray(xs, dtype=float):
        val = F.eval(x)
        left_mass = sum(float(w) for w, (a, b) in zip(p, images) if b < x)
        rhs = left_mass
        for m, w, (a, b) in zip(s, p, images):
            if a <= x <= b:
                y = min(max(float(m.inverse(x)), 0.0), 1.0)
                inner = F.eval(y)
                part = inner if m.sign > 0 else ValueInterval(1 - inner.hi, 1 - inner.lo)
                rhs = ValueInterval(left_mass + float(w) * part.lo, left_mass + float(w) * part.hi)
                break
        if not isinstance(rhs, ValueInterval):
            rhs = ValueInterval.point(rhs)
        worst = max(worst, abs(val.mid - rhs.mid) + val.width / 2 + rhs.width / 2)
    return worst


@dataclass(frozen=True)
class Plateau:
    a: object
    b: object
    value: object


@dataclass(frozen=True)
class PlateauSequence:
    plateaus: tuple
    limit: object
    verified: bool  # False in conjecture mode


def _is_reciprocal_odd(p) -> bool:
    if isinstance(p, (int, Fraction)):
        p = Fraction(p)
        return p.numerator == 1 and p.denominator % 2 == 1 and p.denominator >= 3
    inv = 1 / float(p)
    m = round(inv)
    return abs(inv - m) <= 1e-9 and m % 2 == 1 and m >= 3


def plateau_intervals(r, p, k_max: int, conjecture: bool = False) -> PlateauSequence:
    """Intervals where the staircases with weights ``p`` and ``1-p`` coincide.

    Iterates ``S(x, y) = (1 - x/r**2, 1 - p(1-p) y)`` from the seeds
    ``q_* = 1 - 1/r + 1/r**2``, ``q^* = 1 - 1/r**2``, ``p_* = 1 - p(1-p)``;
    even ``k`` take ``a_k`` from the ``q_*`` orbit, odd ``k`` from the
    ``q^*`` orbit.  Exact for rational ``r`` and ``p``.

    Only ``p = 1/(2m+1)`` is covered by a proof; other ``p`` need
    ``conjecture=True`` and come back flagged unverified.
    """
    exact = isinstance(r, (int, Fraction)) and isinstance(p, (int, Fraction))
    if exact:
        r, p = Fraction(r), Fraction(p)
    if not r > 2:
        raise HypothesisViolation("plateaus", "r_range", "needs r > 2")
    if not 0 < p < 1:
        raise ValueError("needs 0 < p < 1")
    verified = _is_reciprocal_odd(p)
    if not verified and not conjecture:
        raise HypothesisViolation("plateaus", "weights", f"p={p} is not of the form 1/(2m+1); pass conjecture=True")
    q = 1 / r
    lower_seed = 1 - q + q * q
    upper_seed = 1 - q * q
    y = 1 - p * (1 - p)
    c = p * (1 - p)
    out = []
    u, v = lower_seed, upper_seed
    for k in range(k_max + 1):
        if k % 2 == 0:
            out.append(Plateau(u, v, y))
        else:
            out.append(Plateau(v, u, y))
        u, v = 1 - q * q * u, 1 - q * q * v
        y = 1 - c * y
    return PlateauSequence(tuple(out), 1 / (1 + q * q), verified)


class Sign(enum.Enum):
    NON_NEGATIVE = "NonNegative"
    NON_POSITIVE = "NonPositive"
    MIXED = "Mixed"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class SignReport:
    kind: Sign
    max_abs_exact: float
    n_positive: int
    n_negative: int
    n_zero: int
    undetermined: tuple  # (left, right) segments whose enclosure straddles 0


def _segments(A: Staircase, B: Staircase):
    """Common refinement of the two cell structures.

    Returns segment endpoints and, per segment, the enclosures of both CDFs.
    Every segment lies entirely inside a cell or entirely inside a gap of
    each staircase.
    """
    pts = np.unique(np.concatenate([[0.0, 1.0], A.lo, A.hi, B.lo, B.hi]))
    pts = pts[(pts >= 0.0) & (pts <= 1.0)]
    left, right = pts[:-1], pts[1:]
    mid = (left + right) / 2
    a_lo, a_hi = A.eval_many(mid)
    b_lo, b_hi = B.eval_many(mid)
    return left, right, a_lo, a_hi, b_lo, b_hi


def cdf_difference_sign(A: Staircase, B: Staircase, tol: float = GAP_TOL,
                        min_length: float = 1e-12) -> SignReport:
    """Classify the sign of ``F_A - F_B``.

    Exact values on common gaps decide the classification; a segment whose
    enclosure lies strictly on one side of zero also counts.  Segments
    shorter than ``min_length`` are ignored as evidence: cylinder endpoints
    computed along different compositions may disagree in the last bits.
    Segments whose enclosure straddles zero are listed but never flip the
    verdict.  With no evidence of either sign (e.g. identical inputs) the
    verdict is ``NON_NEGATIVE`` with ``max_abs_exact == 0``.
    """
    left, right, a_lo, a_hi, b_lo, b_hi = _segments(A, B)
    long_enough = (right - left) > min_length
    exact = (a_lo == a_hi) & (b_lo == b_hi) & long_enough
    loose = ~(a_lo == a_hi) | ~(b_lo == b_hi)
    loose &= long_enough
    d = a_lo - b_lo
    dmin = a_lo - b_hi
    dmax = a_hi - b_lo
    pos = int(np.sum(exact & (d > tol))) + int(np.sum(loose & (dmin > tol)))
    neg = int(np.sum(exact & (d < -tol))) + int(np.sum(loose & (dmax < -tol)))
    zero = int(np.sum(exact & (np.abs(d) <= tol)))
    straddle = loose & (dmin < -tol) & (dmax > tol)
    und = tuple(zip(left[straddle].tolist(), right[straddle].tolist()))
    max_abs = float(np.max(np.abs(d[exact]))) if exact.any() else 0.0
    if pos and neg:
        kind = Sign.MIXED
    elif neg:
        kind = Sign.NON_POSITIVE
    elif pos or zero:
        kind = Sign.NON_NEGATIVE
    else:
        kind = Sign.UNDETERMINED
    return SignReport(kind, max_abs, pos, neg, zero, und)


def write_staircase_csv(F: Staircase, fh) -> None:
    """Rows ``x_left,x_right,kind,value,mass`` in ascending ``x_left``.

    Gaps carry the exact CDF value and zero mass; cells carry ``cum_left``.
    """
    fh.write("x_left,x_right,kind,value,mass\n")
    prev = 0.0
    prev_val = 0.0
    for lo, hi, cl, m in zip(F.lo.tolist(), F.hi.tolist(), F.cum_left.tolist(), F.mass.tolist()):
        if lo > prev:
            fh.write(f"{prev!r},{lo!r},gap,{prev_val!r},0.0\n")
        fh.write(f"{lo!r},{hi!r},cell,{cl!r},{m!r}\n")
        prev = max(prev, hi)
        prev_val = cl + m
    if prev < 1.0:
        fh.write(f"{prev!r},1.0,gap,{prev_val!r},0.0\n")


def staircase_csv(F: Staircase) -> str:
    buf = io.StringIO()
    write_staircase_csv(F, buf)
    return buf.getvalue()


def write_envelope_csv(r, p, fh, n_points: int = 501) -> None:
    """Columns ``x,lower,upper`` of the power-law envelope on ``(0, 1]``."""
    fh.write("x,lower,upper\n")
    for x in np.linspace(1.0 / n_points, 1.0, n_points).tolist():
        lo, hi = power_law_envelope(r, p, x)
        fh.write(f"{x!r},{lo!r},{hi!r}\n")


def flip_staircase(r, p, resolution=DEFAULT_RESOLUTION) -> Staircase:
    """Staircase of ``x/r, 1-x/r`` with weights ``(p, 1-p)``."""
    return _flip_staircase(r, p, resolution)


def cantor_staircase(r, p, resolution=DEFAULT_RESOLUTION) -> Staircase:
    """Staircase of ``x/r, x/r + (r-1)/r`` with weights ``(p, 1-p)``."""
    return build_staircase(cantor_system(float(r)), WeightVector([float(p), 1 - float(p)]), resolution)
