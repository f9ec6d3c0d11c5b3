"""Contraction maps of the unit interval and iterated function systems.

Maps come from a closed set of families so that Lipschitz constants and
monotonicity are computed rather than declared:

* :class:`Affine` -- ``x -> slope * x + intercept``
* :class:`QuarterSine` -- ``x -> scale * sin(pi * x / 4) + offset``

Affine maps with :class:`fractions.Fraction` coefficients evaluate exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Sequence

import numpy as np

#: slack for domain checks and for endpoint-touching images
EPS = 1e-12

Word = tuple  # tuple of 1-based symbols, e.g. (1, 2, 2)


class DomainError(ValueError):
    """Raised when a point lies outside the unit interval."""


class HypothesisViolation(ValueError):
    """A closed form or lemma was requested outside its hypotheses.

    ``condition`` names the failing hypothesis (``"ordering"``,
    ``"disjoint_images"``, ``"positivity"``, ``"dominance"``, ...).
    """

    def __init__(self, theorem: str, condition: str, detail: str = ""):
        self.theorem = theorem
        self.condition = condition
        self.detail = detail
        msg = f"{theorem}: hypothesis '{condition}' fails"
        super().__init__(f"{msg} ({detail})" if detail else msg)


def _check_unit(x):
    if x < -EPS or x > 1 + EPS:
        raise DomainError(f"x={x!r} is outside [0, 1]")


class ContractionMap:
    """Base class of the monotone contraction families."""

    def __call__(self, x):
        _check_unit(x)
        return self._eval(x)

    def _eval(self, x):
        raise NotImplementedError

    def apply(self, xs: np.ndarray) -> np.ndarray:
        """Vectorised evaluation on a float array (no domain check)."""
        raise NotImplementedError

    @property
    def lipschitz(self) -> float:
        raise NotImplementedError

    @property
    def sign(self) -> int:
        raise NotImplementedError

    @property
    def endpoints(self):
        """``(f(0), f(1))``."""
        return self._eval(0), self._eval(1)

    @property
    def image(self):
        """The image interval ``f[0, 1]`` as ``(low, high)``."""
        a, b = self.endpoints
        return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class Affine(ContractionMap):
    slope: Real
    intercept: Real

    def __post_init__(self):
        _validate(self)

    def _eval(self, x):
        return self.slope * x + self.intercept

    def apply(self, xs):
        return float(self.slope) * xs + float(self.intercept)

    @property
    def lipschitz(self):
        return abs(self.slope)

    @property
    def sign(self):
        return 1 if self.slope > 0 else -1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (int, Fraction)) for v in (self.slope, self.intercept))

    def inverse(self, y):
        return (y - self.intercept) / self.slope


@dataclass(frozen=True)
class QuarterSine(ContractionMap):
    scale: Real
    offset: Real

    def __post_init__(self):
        _validate(self)

    def _eval(self, x):
        return self.scale * math.sin(math.pi * float(x) / 4) + self.offset

    def apply(self, xs):
        return float(self.scale) * np.sin(np.pi * xs / 4) + float(self.offset)

    @property
    def lipschitz(self):
        return abs(self.scale) * math.pi / 4

    @property
    def sign(self):
        return 1 if self.scale > 0 else -1

    def inverse(self, y):
        return 4 / math.pi * math.asin((y - self.offset) / self.scale)


def _validate(m: ContractionMap):
    coef = m.slope if isinstance(m, Affine) else m.scale
    if coef == 0:
        raise ValueError(f"{m!r} is not strictly monotone")
    if not m.lipschitz < 1:
        raise ValueError(f"{m!r} is not a strict contraction (Lip={float(m.lipschitz):.6g})")
    for v in m.endpoints:
        if v < -EPS or v > 1 + EPS:
            raise ValueError(f"{m!r} does not map [0,1] into [0,1]")


def evaluate_map(m: ContractionMap, x):
    """Evaluate ``m`` at ``x`` in [0, 1]; raises :class:`DomainError` otherwise."""
    return m(x)


class Dominance(enum.Enum):
    NON_NEGATIVE = "NonNegative"
    NON_POSITIVE = "NonPositive"
    BOTH = "Both"
    NEITHER = "Neither"


@dataclass(frozen=True)
class WeightVector:
    """A probability vector with every entry in (0, 1)."""

    weights: tuple

    def __init__(self, weights: Sequence[Real]):
        object.__setattr__(self, "weights", tuple(weights))
        if len(self.weights) < 1:
            raise ValueError("empty weight vector")
        if any(not (0 < w < 1) for w in self.weights):
            raise ValueError(f"weights must lie in (0, 1): {self.weights}")
        if abs(sum(self.weights) - 1) > EPS:
            raise ValueError(f"weights sum to {float(sum(self.weights))!r}, not 1")

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)

    def as_array(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, (int, Fraction)) for w in self.weights)

    def reversed(self) -> "WeightVector":
        return WeightVector(self.weights[::-1])


def check_weight_dominance(p: WeightVector, q: WeightVector, tol: float = EPS) -> Dominance:
    """Classify the signs of the partial sums ``sum_{i<=m} (p_i - q_i)``.

    Partial sums within ``tol`` of zero count as both signs.
    """
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {len(p)} != {len(q)}")
    partial = 0
    nonneg = nonpos = True
    for a, b in zip(p, q):
        partial += a - b
        if partial < -tol:
            nonneg = False
        if partial > tol:
            nonpos = False
    if nonneg and nonpos:
        return Dominance.BOTH
    if nonneg:
        return Dominance.NON_NEGATIVE
    if nonpos:
        return Dominance.NON_POSITIVE
    return Dominance.NEITHER


@dataclass(frozen=True)
class ValidationReport:
    ordering_ok: bool
    disjoint_open_images: bool
    disjoint_closed_images: bool
    all_positive: bool

    def as_dict(self):
        return {
            "ordering_ok": self.ordering_ok,
            "disjoint_open_images": self.disjoint_open_images,
            "disjoint_closed_images": self.disjoint_closed_images,
            "all_positive": self.all_positive,
        }


@dataclass(frozen=True)
class IFSystem:
    """An ordered family of at least two contraction maps of [0, 1]."""

    maps: tuple

    def __init__(self, maps: Sequence[ContractionMap]):
        object.__setattr__(self, "maps", tuple(maps))
        if len(self.maps) < 2:
            raise ValueError("an IFS needs at least two maps")
        for m in self.maps:
            if not isinstance(m, ContractionMap):
                raise TypeError(f"not a contraction map: {m!r}")

    def __len__(self):
        return len(self.maps)

    def __getitem__(self, i):
        return self.maps[i]

    def __iter__(self):
        return iter(self.maps)

    @property
    def k(self) -> int:
        return len(self.maps)

    @property
    def is_affine(self) -> bool:
        return all(isinstance(m, Affine) for m in self.maps)

    @cached_property
    def report(self) -> ValidationReport:
        return validate_system(self)

    @property
    def ordering_ok(self):
        return self.report.ordering_ok

    @property
    def disjoint_open_images(self):
        return self.report.disjoint_open_images

    @property
    def disjoint_closed_images(self):
        return self.report.disjoint_closed_images

    @property
    def all_positive(self):
        return self.report.all_positive


def validate_system(s: IFSystem) -> ValidationReport:
    """Compute the ordering, disjointness and positivity flags of ``s``."""
    tops = [max(m.endpoints) for m in s]
    ordering = all(tops[i] <= tops[i + 1] + EPS for i in range(len(tops) - 1))

    images = [m.image for m in s]
    open_ok = closed_ok = True
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            (a0, a1), (b0, b1) = images[i], images[j]
            overlap = min(a1, b1) - max(a0, b0)
            if overlap > EPS:
                open_ok = False
            if overlap >= -EPS:
                closed_ok = False
    return ValidationReport(
        ordering_ok=ordering,
        disjoint_open_images=open_ok,
        disjoint_closed_images=closed_ok,
        all_positive=all(m.sign > 0 for m in s),
    )


def check_word(s: IFSystem, w: Word):
    for a in w:
        if not (isinstance(a, (int, np.integer)) and 1 <= a <= s.k):
            raise ValueError(f"symbol {a!r} not in 1..{s.k}")


def compose_point(s: IFSystem, w: Word, x):
    """``f_w(x) = f_{w_1}(f_{w_2}(...f_{w_n}(x)))``."""
    for a in reversed(w):
        x = s.maps[a - 1]._eval(x)
    return x


def cylinder_interval(s: IFSystem, w: Word):
    """Endpoints of ``f_w[0, 1]`` sorted ascending."""
    check_word(s, w)
    a, b = compose_point(s, w, 0), compose_point(s, w, 1)
    return (a, b) if a <= b else (b, a)


def word_orientation(s: IFSystem, w: Word) -> int:
    """Sign of the derivative of ``f_w``: the product of the map signs."""
    sign = 1
    for a in w:
        sign *= s.maps[a - 1].sign
    return sign


def parse_word(text: str) -> Word:
    """``"122"`` -> ``(1, 2, 2)``; single-digit symbols only."""
    return tuple(int(c) for c in text)


def format_word(w: Word) -> str:
    return "".join(str(a) for a in w)


# Named systems used throughout the examples.

def flip_system(r) -> IFSystem:
    """The pair ``x/r`` and ``1 - x/r`` (second map orientation reversing)."""
    q = 1 / Fraction(r) if isinstance(r, (int, Fraction)) else 1 / r
    return IFSystem([Affine(q, 0), Affine(-q, 1)])


def cantor_system(r) -> IFSystem:
    """The positive pair ``x/r`` and ``x/r + (r-1)/r``."""
    q = 1 / Fraction(r) if isinstance(r, (int, Fraction)) else 1 / r
    return IFSystem([Affine(q, 0), Affine(q, 1 - q)])


def identify_flip_system(s: IFSystem):
    """Return ``r`` if ``s`` is ``flip_system(r)`` for some ``r > 2``, else None."""
    if s.k != 2 or not s.is_affine:
        return None
    f1, f2 = s.maps
    if f1.intercept == 0 and f1.slope > 0 and f2.intercept == 1 and f2.slope == -f1.slope:
        return 1 / f1.slope
    return None


def identify_cantor_system(s: IFSystem):
    """Return ``r`` if ``s`` is ``cantor_system(r)``, else None."""
    if s.k != 2 or not s.is_affine:
        return None
    g1, g2 = s.maps
    if (g1.intercept == 0 and g1.slope > 0 and g2.slope == g1.slope
            and abs(g2.intercept - (1 - g1.slope)) <= EPS):
        return 1 / g1.slope
    return None
