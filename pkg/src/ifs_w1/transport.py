"""First Wasserstein distance between stationary measures.

``w1_numeric`` integrates ``|F - G|`` over the common refinement of two
staircases and returns a certified enclosure.  The closed forms check their
hypotheses first and raise :class:`HypothesisViolation` when one fails;
they never return a number outside their range of validity.  All distances
are returned nonnegative; the orientation of the underlying signed
difference is reported separately by :func:`w1_report`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .intervals import ValueInterval
from .maps import (EPS, Affine, Dominance, HypothesisViolation, IFSystem, WeightVector,
                   cantor_system, check_weight_dominance, flip_system,
                   identify_cantor_system, identify_flip_system)
from .staircase import (DEFAULT_RESOLUTION, Identity, SignedIdentity, Staircase,
                        _segments, build_staircase, first_moment_closed,
                        integrate_against)

CLOSED_FORM_TOL = 1e-9
SCHEMA_VERSION = 1


def w1_numeric(A: Staircase, B: Staircase) -> ValueInterval:
    """Enclosure of ``integral_0^1 |F_A(t) - F_B(t)| dt``.

    On segments where both CDFs sit in gaps the integrand is an exact
    constant; elsewhere it is bounded using the cell enclosures.
    """
    left, right, a_lo, a_hi, b_lo, b_hi = _segments(A, B)
    length = right - left
    dmin = a_lo - b_hi
    dmax = a_hi - b_lo
    low = np.maximum(0.0, np.maximum(dmin, -dmax))
    high = np.maximum(np.abs(dmin), np.abs(dmax))
    slack = 4 * np.finfo(float).eps * len(length)
    return ValueInterval(max(0.0, float(np.dot(length, low)) - slack),
                         float(np.dot(length, high)) + slack)


def _exact_or_float(x):
    return x if isinstance(x, Fraction) else float(x)


def _check_theorem1(s: IFSystem, p: WeightVector, q: WeightVector) -> Dominance:
    name = "theorem1"
    if len(p) != s.k or len(q) != s.k:
        raise HypothesisViolation(name, "length", "weights and maps differ in length")
    rep = s.report
    if not rep.ordering_ok:
        raise HypothesisViolation(name, "ordering")
    if not rep.disjoint_open_images:
        raise HypothesisViolation(name, "disjoint_images")
    if not rep.all_positive:
        raise HypothesisViolation(name, "positivity")
    dom = check_weight_dominance(p, q)
    if dom is Dominance.NEITHER:
        raise HypothesisViolation(name, "dominance", "partial sums of p - q change sign")
    return dom


def w1_closed_same_ifs(s: IFSystem, p: WeightVector, q: WeightVector,
                       resolution: float = DEFAULT_RESOLUTION):
    """Distance between two stationary measures of one positive system.

    Affine maps give ``|m_p - m_q|`` with ``m = sum p_i t_i / (1 - sum p_i rho_i)``,
    exact for rational input.  Other positive maps give an enclosure of the
    absolute difference of the two means, computed from staircases.
    """
    _check_theorem1(s, p, q)
    if s.is_affine:
        return abs(first_moment_closed(s, p) - first_moment_closed(s, q))
    mp = integrate_against(build_staircase(s, p, resolution), Identity())
    mq = integrate_against(build_staircase(s, q, resolution), Identity())
    return abs(mp - mq)


def _below_everywhere(g, f, n: int = 2001) -> bool:
    """``g(x) <= f(x)`` on [0, 1]: exact for affine pairs, a dense grid otherwise."""
    if isinstance(g, Affine) and isinstance(f, Affine):
        return g.slope <= f.slope + EPS and g.intercept <= f.intercept + EPS \
            and g.slope + g.intercept <= f.slope + f.intercept + EPS
    xs = np.linspace(0.0, 1.0, n)
    return bool(np.all(g.apply(xs) <= f.apply(xs) + EPS))


def _check_theorem2(f: IFSystem, g: IFSystem, p: WeightVector, q: WeightVector):
    name = "theorem2"
    if f.k != 2 or g.k != 2 or len(p) != 2 or len(q) != 2:
        raise HypothesisViolation(name, "two_maps")
    if not (f.all_positive and g.all_positive):
        raise HypothesisViolation(name, "positivity")
    if not f.ordering_ok:
        raise HypothesisViolation(name, "ordering")
    if not f.disjoint_open_images:
        raise HypothesisViolation(name, "disjoint_images")
    for fi, gi in zip(f, g):
        if abs(fi.endpoints[0] - gi.endpoints[0]) > EPS:
            raise HypothesisViolation(name, "anchor", "g_i(0) != f_i(0)")
        if not _below_everywhere(gi, fi):
            raise HypothesisViolation(name, "domination", "g_i <= f_i fails")
    if not p[0] <= q[0] + EPS:
        raise HypothesisViolation(name, "weight_order", f"p_1={p[0]} > q_1={q[0]}")


def w1_closed_two_ifs(f: IFSystem, g: IFSystem, p: WeightVector, q: WeightVector,
                      resolution: float = DEFAULT_RESOLUTION):
    """Distance between the measures of two positive two-map systems.

    Affine case: ``|m(g, q) - m(f, p)|`` from the moment formula.  Other
    positive maps: enclosure of the same difference from staircases.
    """
    _check_theorem2(f, g, p, q)
    if f.is_affine and g.is_affine:
        return abs(first_moment_closed(g, q) - first_moment_closed(f, p))
    mf = integrate_against(build_staircase(f, p, resolution), Identity())
    mg = integrate_against(build_staircase(g, q, resolution), Identity())
    return abs(mg - mf)


def _is_theorem4_weights(p: WeightVector):
    """Return ``k`` if ``p == (1/(2k+1), 2k/(2k+1))``, else None."""
    if len(p) != 2:
        return None
    inv = 1 / float(p[0])
    k2 = round(inv)
    if k2 < 3 or k2 % 2 == 0 or abs(inv - k2) > 1e-9:
        return None
    return (k2 - 1) // 2


@dataclass(frozen=True)
class Theorem4Result:
    signed_integral: ValueInterval  # integral of the signed cost against mu_p - mu_q
    distance: ValueInterval        # its absolute value
    numeric: ValueInterval
    threshold: float

    @property
    def consistent(self) -> bool:
        return self.distance.intersects(self.numeric, CLOSED_FORM_TOL)


def w1_theorem4(r: float, k: int, resolution: float = DEFAULT_RESOLUTION) -> Theorem4Result:
    """Signed-cost integral for ``x/r, 1-x/r`` with weights ``1/(2k+1)`` and reversed.

    The cost is ``-x`` below ``r**2/(r**2+1)`` and ``+x`` from there on.
    Needs ``r >= 2k+1`` (the boundary case ``r = 2k+1`` is admitted).
    Also returns the ``w1_numeric`` enclosure for the cross-check.
    """
    if not (isinstance(k, int) and k >= 1):
        raise ValueError("k must be a positive integer")
    r = float(r)
    if r < 2 * k + 1 - EPS or r <= 2:
        raise HypothesisViolation("theorem4", "r_range", f"r={r} < 2k+1={2 * k + 1}")
    a = 1 / (2 * k + 1)
    s = flip_system(r)
    A = build_staircase(s, WeightVector([a, 1 - a]), resolution)
    B = build_staircase(s, WeightVector([1 - a, a]), resolution)
    t = r * r / (r * r + 1)
    cost = SignedIdentity(t)
    signed = integrate_against(A, cost) - integrate_against(B, cost)
    return Theorem4Result(signed, abs(signed), w1_numeric(A, B), t)


def flip_moment(r, p1):
    """Mean of the stationary measure of ``x/r, 1-x/r`` with weights ``(p1, 1-p1)``."""
    return first_moment_closed(flip_system(r), WeightVector([p1, 1 - p1]))


def cantor_moment(r, p1):
    """Mean of the stationary measure of ``x/r, x/r+(r-1)/r``: simply ``1 - p1``."""
    return first_moment_closed(cantor_system(r), WeightVector([p1, 1 - p1]))


def w1_prop5(r, p: WeightVector):
    """Distance between the flip-pair and the positive-pair measures, same weights.

    Zero when ``p_1 = 1/2``; otherwise the absolute difference of the two
    means.  Exact for rational ``r`` and ``p``.
    """
    if not float(r) > 2:
        raise HypothesisViolation("prop5", "r_range", "needs r > 2")
    if len(p) != 2:
        raise HypothesisViolation("prop5", "two_maps")
    if p[0] == Fraction(1, 2):
        return Fraction(0) if isinstance(p[0], Fraction) else 0.0
    return abs(cantor_moment(r, p[0]) - flip_moment(r, p[0]))


def prop5_orientation(p: WeightVector) -> str:
    """Which measure has the larger mean: ``'g-f'``, ``'zero'`` or ``'f-g'``."""
    if p[0] == Fraction(1, 2) or abs(float(p[0]) - 0.5) <= EPS:
        return "zero"
    return "g-f" if p[0] < 0.5 else "f-g"


def _check_prop5(f: IFSystem, p: WeightVector, g: IFSystem, q: WeightVector):
    rf, rg = identify_flip_system(f), identify_cantor_system(g)
    if rf is None or rg is None:
        raise HypothesisViolation("prop5", "family", "needs the flip pair against the positive pair")
    if abs(float(rf) - float(rg)) > EPS:
        raise HypothesisViolation("prop5", "same_r", f"r differs: {float(rf):g} vs {float(rg):g}")
    if not float(rf) > 2:
        raise HypothesisViolation("prop5", "r_range")
    if any(abs(float(a) - float(b)) > EPS for a, b in zip(p, q)):
        raise HypothesisViolation("prop5", "same_weights", "weights differ")
    return rf


def _check_theorem4(f: IFSystem, p: WeightVector, g: IFSystem, q: WeightVector):
    r = identify_flip_system(f)
    if r is None or identify_flip_system(g) is None or abs(float(r) - float(identify_flip_system(g))) > EPS:
        raise HypothesisViolation("theorem4", "family", "needs one flip pair on both sides")
    k = _is_theorem4_weights(p)
    if k is None or any(abs(float(a) - float(b)) > EPS for a, b in zip(q, reversed(tuple(p)))):
        raise HypothesisViolation("theorem4", "weights", "needs p = (1/(2k+1), 2k/(2k+1)) and q = reversed p")
    if float(r) < 2 * k + 1 - EPS:
        raise HypothesisViolation("theorem4", "r_range", f"r={float(r):g} < 2k+1={2 * k + 1}")
    return float(r), k


@dataclass
class ClosedForm:
    name: str
    hypotheses_held: bool
    value: Optional[object] = None  # exact number or ValueInterval
    orientation: Optional[str] = None
    failed_condition: Optional[str] = None
    detail: str = ""

    def as_interval(self) -> Optional[ValueInterval]:
        if self.value is None:
            return None
        if isinstance(self.value, ValueInterval):
            return self.value
        return ValueInterval.point(float(self.value))

    def to_json(self):
        v = self.value
        if isinstance(v, ValueInterval):
            val = {"lo": float(v.lo), "hi": float(v.hi)}
        elif v is None:
            val = None
        else:
            val = {"value": float(v)}
            if isinstance(v, Fraction):
                val["exact"] = f"{v.numerator}/{v.denominator}"
        return {
            "name": self.name,
            "hypotheses_held": self.hypotheses_held,
            "value": val,
            "orientation": self.orientation,
            "failed_condition": self.failed_condition,
            "detail": self.detail,
        }


@dataclass
class W1Report:
    numeric: ValueInterval
    closed_forms: list
    monte_carlo: Optional[tuple] = None  # (estimate, std_error)
    consistent: bool = True
    disagreements: list = field(default_factory=list)
    resolution: float = DEFAULT_RESOLUTION

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "resolution": self.resolution,
            "numeric": {"lo": float(self.numeric.lo), "hi": float(self.numeric.hi),
                        "mid": float(self.numeric.mid)},
            "closed_forms": [c.to_json() for c in self.closed_forms],
            "monte_carlo": None if self.monte_carlo is None else
            {"estimate": float(self.monte_carlo[0]), "std_error": float(self.monte_carlo[1])},
            "consistent": self.consistent,
            "disagreements": list(self.disagreements),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _attempt(name, fn):
    try:
        value, orientation = fn()
    except HypothesisViolation as exc:
        return ClosedForm(name, False, failed_condition=exc.condition, detail=exc.detail)
    return ClosedForm(name, True, value=value, orientation=orientation)


def w1_report(f: IFSystem, p: WeightVector, g: IFSystem, q: WeightVector,
              resolution: float = DEFAULT_RESOLUTION, mc_count: int = 0,
              seed: int = 0, burn_in: int = 64) -> W1Report:
    """Numeric distance plus every closed form whose hypotheses hold.

    ``consistent`` is False iff an applicable closed form falls outside the
    numeric enclosure widened by ``1e-9``.
    """
    A = build_staircase(f, p, resolution)
    B = build_staircase(g, q, resolution)
    numeric = w1_numeric(A, B)
    forms = []

    def theorem1():
        if f != g:
            raise HypothesisViolation("theorem1", "same_system", "the two systems differ")
        dom = _check_theorem1(f, p, q)
        if f.is_affine:
            mp, mq = first_moment_closed(f, p), first_moment_closed(f, q)
            val = abs(mp - mq)
        else:
            mp = integrate_against(A, Identity())
            mq = integrate_against(B, Identity())
            val = abs(mp - mq)
        return val, dom.value

    def theorem2():
        _check_theorem2(f, g, p, q)
        if f.is_affine and g.is_affine:
            d = first_moment_closed(g, q) - first_moment_closed(f, p)
            return abs(d), ("g-f" if d >= 0 else "f-g")
        d = integrate_against(B, Identity()) - integrate_against(A, Identity())
        return abs(d), ("g-f" if d.mid >= 0 else "f-g")

    def theorem4():
        r, k = _check_theorem4(f, p, g, q)
        t = r * r / (r * r + 1)
        signed = integrate_against(A, SignedIdentity(t)) - integrate_against(B, SignedIdentity(t))
        return abs(signed), ("positive" if signed.mid >= 0 else "negative")

    def prop5():
        r = _check_prop5(f, p, g, q)
        return w1_prop5(r, p), prop5_orientation(p)

    for name, fn in (("theorem1", theorem1), ("theorem2", theorem2),
                     ("theorem4", theorem4), ("prop5", prop5)):
        forms.append(_attempt(name, fn))

    mc = None
    if mc_count:
        from .sampler import chaos_game, w1_empirical
        sa = chaos_game(f, p, mc_count, burn_in, seed)
        sb = chaos_game(g, q, mc_count, burn_in, seed + 1)
        mc = w1_empirical(sa, sb)

    disagreements = []
    for c in forms:
        if not c.hypotheses_held:
            continue
        iv = c.as_interval()
        if not iv.intersects(numeric, CLOSED_FORM_TOL):
            disagreements.append(c.name)
    return W1Report(numeric, forms, mc, not disagreements, disagreements, resolution)
