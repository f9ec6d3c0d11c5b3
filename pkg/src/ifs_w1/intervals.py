"""Closed real intervals used as certified enclosures."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ValueInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, v) -> "ValueInterval":
        return cls(v, v)

    @property
    def mid(self) -> float:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x, tol: float = 0.0) -> bool:
        return self.lo - tol <= x <= self.hi + tol

    def intersects(self, other: "ValueInterval", tol: float = 0.0) -> bool:
        return self.lo - tol <= other.hi and other.lo - tol <= self.hi

    def widen(self, r: float) -> "ValueInterval":
        return ValueInterval(self.lo - r, self.hi + r)

    def __sub__(self, other: "ValueInterval") -> "ValueInterval":
        return ValueInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self):
        return ValueInterval(-self.hi, -self.lo)

    def __abs__(self) -> "ValueInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return ValueInterval(0.0, max(-self.lo, self.hi))

    def as_list(self):
        return [float(self.lo), float(self.hi)]

    def __repr__(self):
        return f"[{float(self.lo):.12g}, {float(self.hi):.12g}]"
