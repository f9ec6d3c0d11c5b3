"""Plain-text system files.

One map per line, then one or more weight lines::

    # three maps, two weight vectors
    affine 1/5 0
    affine 1/5 2/5
    affine 1/5 4/5
    weights 1/2 1/4 1/4
    weights 1/4 1/4 1/2

Numbers are integers, decimals or ``a/b`` rationals; rationals and integers
stay exact.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .maps import Affine, IFSystem, QuarterSine, WeightVector


class SpecError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__(f"{line}:{col}: {msg}")
        self.line = line
        self.col = col


@dataclass
class SystemSpec:
    system: IFSystem
    weights: list


def parse_number(tok: str):
    if "/" in tok:
        a, b = tok.split("/", 1)
        return Fraction(int(a), int(b))
    try:
        return int(tok)
    except ValueError:
        return float(tok)


def _tokens(line):
    col = 0
    out = []
    for tok in line.split():
        col = line.index(tok, col)
        out.append((tok, col + 1))
        col += len(tok)
    return out


def parse_spec(text: str) -> SystemSpec:
    maps, weights = [], []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, hcol = toks[0]
        try:
            nums = [parse_number(t) for t, _ in toks[1:]]
        except (ValueError, ZeroDivisionError):
            bad = next(c for t, c in toks[1:] if not _is_number(t))
            raise SpecError("not a number", ln, bad) from None
        if head in ("affine", "qsine"):
            if len(nums) != 2:
                raise SpecError(f"'{head}' takes two numbers", ln, hcol)
            if weights:
                raise SpecError("maps must precede weights", ln, hcol)
            cls = Affine if head == "affine" else QuarterSine
            try:
                maps.append(cls(*nums))
            except ValueError as exc:
                raise SpecError(str(exc), ln, hcol) from None
        elif head == "weights":
            try:
                weights.append(WeightVector(nums))
            except ValueError as exc:
                raise SpecError(str(exc), ln, hcol) from None
        else:
            raise SpecError(f"unknown keyword '{head}'", ln, hcol)
    if len(maps) < 2:
        raise SpecError("need at least two maps", 1, 1)
    for w in weights:
        if len(w) != len(maps):
            raise SpecError(f"{len(w)} weights for {len(maps)} maps", 1, 1)
    return SystemSpec(IFSystem(maps), weights)


def _is_number(tok):
    try:
        parse_number(tok)
        return True
    except (ValueError, ZeroDivisionError):
        return False


def format_number(v) -> str:
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else str(v.numerator)
    return repr(v)


def format_spec(s: IFSystem, weights=()) -> str:
    lines = []
    for m in s:
        if isinstance(m, Affine):
            lines.append(f"affine {format_number(m.slope)} {format_number(m.intercept)}")
        else:
            lines.append(f"qsine {format_number(m.scale)} {format_number(m.offset)}")
    for w in weights:
        lines.append("weights " + " ".join(format_number(v) for v in w))
    return "\n".join(lines) + "\n"
