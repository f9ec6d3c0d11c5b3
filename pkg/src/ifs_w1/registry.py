"""The sixteen worked examples, with what each one is expected to show.

Every entry keeps the parameters both as objects and as the source text they
were transcribed from (``source``), so a test can compare the two.  Affine
coefficients are exact rationals; the quarter-sine maps are floats.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from fractions import Fraction as Fr
from pathlib import Path
from typing import Optional

from .maps import (Affine, HypothesisViolation, IFSystem, QuarterSine, WeightVector,
                   cantor_system, flip_system)
from .staircase import (build_staircase, power_law_envelope, write_envelope_csv,
                        write_staircase_csv)
from .transport import (_check_prop5, _check_theorem1, _check_theorem2, _check_theorem4,
                        w1_report)

APPLIES = "TheoremApplies"
DOES_NOT_APPLY = "DoesNotApply"
BOUNDS = "BoundsFigure"

#: resolution used when an example is run from the registry
EXAMPLE_RESOLUTION = 1e-5


@dataclass(frozen=True)
class ExampleSpec:
    id: str
    f: IFSystem
    p: WeightVector
    g: Optional[IFSystem]
    q: Optional[WeightVector]
    expectation: str
    theorem: Optional[str]       # "theorem1" | "theorem2" | "theorem4" | "prop5"
    condition: Optional[str] = None  # failing hypothesis for DOES_NOT_APPLY
    source: dict = field(default_factory=dict)
    description: str = ""

    @property
    def pairs(self):
        """``[(system, weights), ...]`` for every measure the example draws."""
        out = [(self.f, self.p)]
        if self.q is not None:
            out.append((self.g if self.g is not None else self.f, self.q))
        return out


def _w(*ws):
    return WeightVector(ws)


def _sine_system(decreasing_middle=False):
    mid = Affine(Fr(-1, 6), Fr(1, 2)) if decreasing_middle else Affine(Fr(1, 6), Fr(1, 3))
    return IFSystem([QuarterSine(1 / 6, 0.0), mid, QuarterSine(1 / 3, 2 / 3)])


def _thirds():
    return IFSystem([Affine(Fr(1, 3), 0), Affine(Fr(1, 3), Fr(2, 3))])


def _sixths():
    return IFSystem([Affine(Fr(1, 6), 0), Affine(Fr(1, 6), Fr(2, 3))])


def _build():
    sine_src = {"f": "sin(pi x/4)/6, x/6+1/3, sin(pi x/4)/3+2/3"}
    pair_src = {"f": "x/3, x/3+2/3", "g": "x/6, x/6+2/3"}
    eg = [
        ExampleSpec(
            "eg1", IFSystem([Affine(Fr(1, 5), 0), Affine(Fr(1, 5), Fr(2, 5)), Affine(Fr(1, 5), Fr(4, 5))]),
            _w(Fr(1, 2), Fr(1, 4), Fr(1, 4)), None, _w(Fr(1, 4), Fr(1, 4), Fr(1, 2)),
            APPLIES, "theorem1",
            source={"f": "x/5, x/5+2/5, x/5+4/5", "p": "1/2,1/4,1/4", "q": "1/4,1/4,1/2"}),
        ExampleSpec(
            "eg2", IFSystem([Affine(Fr(1, 5), 0), Affine(Fr(3, 5), Fr(1, 5)), Affine(Fr(1, 5), Fr(4, 5))]),
            _w(Fr(1, 4), Fr(1, 3), Fr(5, 12)), None, _w(Fr(1, 6), Fr(1, 4), Fr(7, 12)),
            APPLIES, "theorem1",
            source={"f": "x/5, 3x/5+1/5, x/5+4/5", "p": "1/4,1/3,5/12", "q": "1/6,1/4,7/12"},
            description="listed as applicable; the dominance condition is re-checked, not assumed"),
        ExampleSpec(
            "eg3", _sine_system(), _w(0.1, 0.3, 0.6), None, _w(0.2, 0.5, 0.3),
            APPLIES, "theorem1", source={**sine_src, "p": "0.1,0.3,0.6", "q": "0.2,0.5,0.3"}),
        ExampleSpec(
            "eg4", _sine_system(), _w(0.3, 0.1, 0.6), None, _w(0.2, 0.5, 0.3),
            DOES_NOT_APPLY, "theorem1", "dominance",
            source={**sine_src, "p": "0.3,0.1,0.6", "q": "0.2,0.5,0.3"},
            description="partial sums of p - q are 0.1, -0.3: neither dominates"),
        ExampleSpec(
            "eg5", _sine_system(decreasing_middle=True), _w(0.1, 0.3, 0.6), None, _w(0.2, 0.5, 0.3),
            DOES_NOT_APPLY, "theorem1", "positivity",
            source={"f": "sin(pi x/4)/6, -x/6+1/2, sin(pi x/4)/3+2/3", "p": "0.1,0.3,0.6",
                    "q": "0.2,0.5,0.3"},
            description="the middle map is decreasing"),
        ExampleSpec(
            "eg6", _thirds(), _w(Fr(2, 5), Fr(3, 5)), _sixths(), _w(Fr(1, 2), Fr(1, 2)),
            APPLIES, "theorem2", source={**pair_src, "p": "0.4,0.6", "q": "0.5,0.5"}),
        ExampleSpec(
            "eg7", _thirds(), _w(Fr(1, 2), Fr(1, 2)), _sixths(), _w(Fr(2, 5), Fr(3, 5)),
            DOES_NOT_APPLY, "theorem2", "weight_order",
            source={**pair_src, "p": "0.5,0.5", "q": "0.4,0.6"}),
        ExampleSpec(
            "eg8", _thirds(), _w(Fr(1, 2), Fr(1, 2)), _sixths(), _w(Fr(1, 4), Fr(3, 4)),
            DOES_NOT_APPLY, "theorem2", "weight_order",
            source={**pair_src, "p": "0.5,0.5", "q": "0.25,0.75"}),
        ExampleSpec(
            "eg9", flip_system(3), _w(Fr(1, 3), Fr(2, 3)), flip_system(3), _w(Fr(2, 3), Fr(1, 3)),
            APPLIES, "theorem4", source={"f": "x/3, 1-x/3", "p": "1/3,2/3", "q": "2/3,1/3"},
            description="r = 2k+1 exactly: the boundary case is admitted"),
        ExampleSpec(
            "eg10", flip_system(7), _w(Fr(1, 5), Fr(4, 5)), flip_system(7), _w(Fr(4, 5), Fr(1, 5)),
            APPLIES, "theorem4", source={"f": "x/7, 1-x/7", "p": "1/5,4/5", "q": "4/5,1/5"}),
        ExampleSpec(
            "eg11", flip_system(3), _w(Fr(1, 10), Fr(9, 10)), flip_system(3), _w(Fr(3, 10), Fr(7, 10)),
            DOES_NOT_APPLY, "theorem4", "weights",
            source={"f": "x/3, 1-x/3", "p": "0.1,0.9", "q": "0.3,0.7"},
            description="q printed as (0.3, 0.4), not a probability vector; "
                        "the figure caption's (0.3, 0.7) is used"),
        ExampleSpec(
            "eg12", flip_system(Fr(21, 10)), _w(Fr(10, 21), Fr(11, 21)), None, None,
            BOUNDS, None, source={"f": "x/2.1, 1-x/2.1", "p": "1/2.1,1.1/2.1"}),
        ExampleSpec(
            "eg13", flip_system(3), _w(Fr(2, 3), Fr(1, 3)), None, None,
            BOUNDS, None, source={"f": "x/3, 1-x/3", "p": "2/3,1/3"}),
        ExampleSpec(
            "eg14", flip_system(Fr(5, 2)), _w(Fr(1, 4), Fr(3, 4)),
            cantor_system(Fr(5, 2)), _w(Fr(1, 4), Fr(3, 4)),
            APPLIES, "prop5",
            source={"f": "x/2.5, 1-x/2.5", "g": "x/2.5, x/2.5+1.5/2.5", "p": "0.25,0.75",
                    "q": "0.25,0.75"},
            description="the listed maps repeat eg7; the figure caption's systems are used"),
        ExampleSpec(
            "eg15", flip_system(Fr(5, 2)), _w(Fr(1, 4), Fr(3, 4)), cantor_system(3), _w(Fr(1, 4), Fr(3, 4)),
            DOES_NOT_APPLY, "prop5", "same_r",
            source={"f": "x/2.5, 1-x/2.5", "g": "x/3, x/3+2/3", "p": "0.25,0.75", "q": "0.25,0.75"}),
        ExampleSpec(
            "eg16", flip_system(3), _w(Fr(1, 4), Fr(3, 4)), cantor_system(3), _w(Fr(1, 3), Fr(2, 3)),
            DOES_NOT_APPLY, "prop5", "same_weights",
            source={"f": "x/3, 1-x/3", "g": "x/3, x/3+2/3", "p": "0.25,0.75", "q": "1/3,2/3"}),
    ]
    return {e.id: e for e in eg}


REGISTRY = _build()


def get_example(eid: str) -> ExampleSpec:
    try:
        return REGISTRY[eid]
    except KeyError:
        raise KeyError(f"unknown example '{eid}' (known: {', '.join(REGISTRY)})") from None


def check_hypotheses(e: ExampleSpec):
    """Run the hypothesis check of ``e.theorem``; raises HypothesisViolation."""
    g = e.g if e.g is not None else e.f
    if e.theorem == "theorem1":
        return _check_theorem1(e.f, e.p, e.q)
    if e.theorem == "theorem2":
        return _check_theorem2(e.f, g, e.p, e.q)
    if e.theorem == "theorem4":
        return _check_theorem4(e.f, e.p, g, e.q)
    if e.theorem == "prop5":
        return _check_prop5(e.f, e.p, g, e.q)
    raise ValueError(f"{e.id} names no theorem")


@dataclass
class ExampleOutcome:
    id: str
    expectation: str
    met: bool
    detail: str
    report: Optional[object] = None  # W1Report when two measures are compared
    files: list = field(default_factory=list)


def _bounds_check(e: ExampleSpec, resolution: float):
    r = 1 / float(e.f[0].slope)
    p = float(e.p[0])
    F = build_staircase(e.f, e.p, resolution)
    xs = F.gap_points(1e-300, 1.0)
    lo_v, _ = F.eval_many(xs)
    worst = 0.0
    for x, v in zip(xs.tolist(), lo_v.tolist()):
        lower, upper = power_law_envelope(r, p, x)
        worst = max(worst, lower - v, v - upper)
    return worst <= 1e-12, f"{len(xs)} gap points, worst envelope excess {worst:.3g}", F


def run_example(e: ExampleSpec, resolution: float = EXAMPLE_RESOLUTION,
                out_dir: Optional[Path] = None) -> ExampleOutcome:
    """Check the expectation of ``e`` and optionally write its figure data."""
    files = []
    report = None
    if e.expectation == BOUNDS:
        met, detail, F = _bounds_check(e, resolution)
        if out_dir is not None:
            files.append(_write(out_dir / f"{e.id}_p.csv", lambda fh: write_staircase_csv(F, fh)))
            files.append(_write(out_dir / f"{e.id}_envelope.csv",
                                lambda fh: write_envelope_csv(1 / float(e.f[0].slope), float(e.p[0]), fh)))
        return ExampleOutcome(e.id, e.expectation, met, detail, None, files)

    try:
        check_hypotheses(e)
        held, failed = True, None
    except HypothesisViolation as exc:
        held, failed = False, exc.condition

    if e.expectation == APPLIES:
        met = held
        detail = f"{e.theorem} hypotheses hold" if held else f"{e.theorem} fails '{failed}'"
    else:
        met = (not held) and failed == e.condition
        detail = (f"{e.theorem} fails '{failed}' as expected" if met else
                  f"expected {e.theorem} to fail '{e.condition}', got {failed or 'no failure'}")

    g = e.g if e.g is not None else e.f
    report = w1_report(e.f, e.p, g, e.q, resolution)
    if held and not report.consistent:
        detail += "; closed form outside numeric enclosure"

    if out_dir is not None:
        for tag, (s, w) in zip(("p", "q"), e.pairs):
            F = build_staircase(s, w, resolution)
            files.append(_write(out_dir / f"{e.id}_{tag}.csv", lambda fh, F=F: write_staircase_csv(F, fh)))
    return ExampleOutcome(e.id, e.expectation, met, detail, report, files)


def _write(path: Path, writer) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.StringIO()
    writer(buf)
    path.write_text(buf.getvalue())
    return path
