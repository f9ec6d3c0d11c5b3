"""Command-line interface: ``ifs-w1 {validate,staircase,w1,examples,symbolic}``.

Exit codes: 0 success, 1 failed expectation or inconsistent report,
2 parse or range error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import io
import sys
from fractions import Fraction
from pathlib import Path

from .maps import HypothesisViolation, check_weight_dominance
from .registry import BOUNDS, REGISTRY, get_example, run_example
from .specfile import SpecError, parse_spec
from .staircase import (DEFAULT_RESOLUTION, OverlapError, ResourceError, build_staircase,
                        plateau_intervals,
                        write_envelope_csv, write_staircase_csv)
from .symbolic import MAX_LEVEL, build_level, crossing_equation_search, prefix_sums
from .transport import w1_report

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3


class CliError(Exception):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


def _read_spec(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_IO) from None
    try:
        return parse_spec(text)
    except SpecError as exc:
        raise CliError(f"{path}:{exc}", EXIT_PARSE) from None


def _emit(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(f"{out}: {exc.strerror}", EXIT_IO) from None


def _frac(v):
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


# validate

def cmd_validate(args):
    spec = _read_spec(args.spec)
    rep = spec.system.report
    lines = [f"maps: {spec.system.k}"]
    lines += [f"{k}: {str(v).lower()}" for k, v in rep.as_dict().items()]
    if len(spec.weights) >= 2:
        dom = check_weight_dominance(spec.weights[0], spec.weights[1])
        lines.append(f"dominance: {dom.value}")
    print("\n".join(lines))
    return EXIT_OK


# staircase

def _staircase_source(args):
    if args.example:
        e = _example(args.example)
        pairs = e.pairs
        idx = {"p": 0, "q": 1}[args.which]
        if idx >= len(pairs):
            raise CliError(f"{e.id} has no '{args.which}' measure", EXIT_PARSE)
        return pairs[idx][0], pairs[idx][1], e
    if not args.spec:
        raise CliError("give a spec file or --example", EXIT_PARSE)
    spec = _read_spec(args.spec)
    idx = {"p": 0, "q": 1}[args.which]
    if idx >= len(spec.weights):
        raise CliError(f"{args.spec}: no weights line for '{args.which}'", EXIT_PARSE)
    return spec.system, spec.weights[idx], None


def cmd_staircase(args):
    s, w, e = _staircase_source(args)
    F = build_staircase(s, w, args.resolution)
    buf = io.StringIO()
    write_staircase_csv(F, buf)
    _emit(buf.getvalue(), args.out)
    if e is not None and e.expectation == BOUNDS:
        env = io.StringIO()
        write_envelope_csv(1 / float(e.f[0].slope), float(e.p[0]), env)
        if args.out is None:
            raise CliError("envelope output needs --out", EXIT_PARSE)
        out = Path(args.out)
        _emit(env.getvalue(), out.with_name(out.stem + "_envelope" + (out.suffix or ".csv")))
    return EXIT_OK


# w1

def _w1_inputs(args):
    if args.example:
        e = _example(args.example)
        if e.q is None:
            raise CliError(f"{e.id} draws a single measure", EXIT_PARSE)
        return e.f, e.p, (e.g if e.g is not None else e.f), e.q
    if not args.spec:
        raise CliError("give one or two spec files or --example", EXIT_PARSE)
    a = _read_spec(args.spec[0])
    if len(args.spec) == 1:
        if len(a.weights) < 2:
            raise CliError(f"{args.spec[0]}: need two weights lines", EXIT_PARSE)
        return a.system, a.weights[0], a.system, a.weights[1]
    b = _read_spec(args.spec[1])
    if not a.weights or not b.weights:
        raise CliError("each spec file needs a weights line", EXIT_PARSE)
    return a.system, a.weights[0], b.system, b.weights[0]


def cmd_w1(args):
    f, p, g, q = _w1_inputs(args)
    rep = w1_report(f, p, g, q, args.resolution, mc_count=args.mc, seed=args.seed)
    _emit(rep.dumps() + "\n", args.out)
    return EXIT_OK if rep.consistent else EXIT_FAIL


# examples

def _example(eid):
    try:
        return get_example(eid)
    except KeyError as exc:
        raise CliError(exc.args[0], EXIT_PARSE) from None


def cmd_examples(args):
    ids = list(REGISTRY) if args.all else [_example(args.id).id]
    out_dir = Path(args.out) if args.out else None
    outcomes = []
    for eid in ids:
        try:
            outcomes.append(run_example(REGISTRY[eid], args.resolution, out_dir))
        except OSError as exc:
            raise CliError(f"{exc.filename}: {exc.strerror}", EXIT_IO) from None
    width = max(len(o.id) for o in outcomes)
    for o in outcomes:
        status = "ok" if o.met else "FAIL"
        extra = ""
        if o.report is not None:
            extra = f"  W1 in [{o.report.numeric.lo:.9f}, {o.report.numeric.hi:.9f}]"
        print(f"{o.id:<{width}}  {status:<4}  {o.expectation:<14}  {o.detail}{extra}")
    met = sum(o.met for o in outcomes)
    print(f"{met}/{len(outcomes)} expectations met")
    failed = [o.id for o in outcomes if not o.met]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# symbolic

def _odd_weight(m):
    if m < 1:
        raise CliError("m must be >= 1", EXIT_PARSE)
    return Fraction(1, 2 * m + 1)


def cmd_symbolic(args):
    buf = io.StringIO()
    csv = args.format == "csv"
    if args.level is not None:
        n = args.level
        if not 1 <= n <= MAX_LEVEL:
            raise CliError(f"level must lie in 1..{MAX_LEVEL}", EXIT_PARSE)
        words = build_level(n).as_strings()
        if args.p is None:
            buf.write(("word\n" + "\n".join(words) if csv else " ".join(words)) + "\n")
        else:
            sums = prefix_sums(build_level(n), _odd_weight(args.p))
            if csv:
                buf.write("i,word,prefix_sum\n")
            for i, (w, v) in enumerate(zip(words, sums), start=1):
                buf.write(f"{i},{w},{_frac(v)}\n" if csv else f"{i:>6} {w} {_frac(v)}\n")
    elif args.search is not None:
        k, n_max = args.search
        if k < 1 or not 1 <= n_max <= MAX_LEVEL:
            raise CliError(f"need k >= 1 and 1 <= n_max <= {MAX_LEVEL}", EXIT_PARSE)
        matches = crossing_equation_search(k, n_max)
        if csv:
            buf.write("n,i,value\n")
        for m in matches:
            buf.write(f"{m.n},{m.i},{_frac(m.value)}\n" if csv else
                      f"n={m.n} i={m.i} value={_frac(m.value)}\n")
        if not csv and not matches:
            buf.write("no matches\n")
    else:
        r, m, k_max = args.plateaus
        if k_max < 0:
            raise CliError("k_max must be >= 0", EXIT_PARSE)
        try:
            r = Fraction(r)
        except (ValueError, ZeroDivisionError):
            raise CliError(f"bad r '{r}'", EXIT_PARSE) from None
        if not r > 2:
            raise CliError("r must exceed 2", EXIT_PARSE)
        seq = plateau_intervals(r, _odd_weight(m), k_max)
        if csv:
            buf.write("k,a,b,value\n")
        for k, pl in enumerate(seq.plateaus):
            a, b, v = _frac(pl.a), _frac(pl.b), _frac(pl.value)
            buf.write(f"{k},{a},{b},{v}\n" if csv else f"k={k} ({a}, {b}, {v})\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ifs-w1", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check ordering, disjointness and positivity")
    v.add_argument("spec")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("staircase", help="export a staircase as CSV")
    s.add_argument("spec", nargs="?")
    s.add_argument("--example", help="registry id instead of a spec file")
    s.add_argument("--which", choices=("p", "q"), default="p", help="which weights line (default p)")
    s.add_argument("--resolution", type=float, default=DEFAULT_RESOLUTION)
    s.add_argument("--out")
    s.set_defaults(func=cmd_staircase)

    w = sub.add_parser("w1", help="W1 report as JSON")
    w.add_argument("spec", nargs="*", help="one file with two weights lines, or two files")
    w.add_argument("--example")
    w.add_argument("--resolution", type=float, default=DEFAULT_RESOLUTION)
    w.add_argument("--mc", type=int, default=0, help="Monte Carlo sample size (0 = off)")
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out")
    w.add_argument("--format", choices=("json",), default="json")
    w.set_defaults(func=cmd_w1)

    e = sub.add_parser("examples", help="run the registered examples")
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--id")
    e.add_argument("--out", help="directory for staircase CSVs")
    e.add_argument("--resolution", type=float, default=1e-5)
    e.set_defaults(func=cmd_examples)

    y = sub.add_parser("symbolic", help="ordered words, crossing search, plateaus")
    g = y.add_mutually_exclusive_group(required=True)
    g.add_argument("--level", type=int, metavar="N")
    g.add_argument("--search", type=int, nargs=2, metavar=("K", "N_MAX"))
    g.add_argument("--plateaus", nargs=3, metavar=("R", "M", "K_MAX"))
    y.add_argument("--p", type=int, metavar="K", help="with --level: prefix sums for p = 1/(2K+1)")
    y.add_argument("--format", choices=("text", "csv"), default="text")
    y.add_argument("--out")
    y.set_defaults(func=cmd_symbolic)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "symbolic" and args.plateaus is not None:
        try:
            args.plateaus = [args.plateaus[0], int(args.plateaus[1]), int(args.plateaus[2])]
        except ValueError:
            ap.error("M and K_MAX must be integers")
    if getattr(args, "resolution", 1.0) is not None and not 0 < getattr(args, "resolution", 1.0) <= 1:
        print("error: resolution must lie in (0, 1]", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (OverlapError, ResourceError, HypothesisViolation, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
