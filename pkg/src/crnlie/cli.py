"""Command-line front end.

Exit codes: 0 = controllable (a.e., or at the queried point), 1 = not shown /
not controllable, 2 = usage, parse or input error. Subcommands that give no
verdict exit 0 on success.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from crnlie import __version__
from crnlie import report
from crnlie.lie import DEFAULT_SEED, DEFAULT_TRIALS, analyze_inputs, point_from_mappings, rank_at
from crnlie.linearization import kalman_rank, linearize_at
from crnlie.network import InputSet, NetworkError, ReactionNetwork
from crnlie.parser import ParseError, load
from crnlie.structure import (MAX_UNBUDGETED_STEPS, certify_critical_steps, initializer_report,
                              is_consecutive, minimal_input_sets)


class UsageError(Exception):
    pass


def parse_assignments(text: str | None) -> dict[str, Fraction]:
    """``"X1=0,X2=1/2"`` -> ``{"X1": Fraction(0), "X2": Fraction(1, 2)}``."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not an exact rational: {value!r}") from None
    return out


def _inputs(net: ReactionNetwork, args) -> InputSet:
    if args.all_inputs:
        return InputSet.all_steps(net)
    if not args.inputs:
        raise UsageError("give --inputs k_a,k_b,... or --all-inputs")
    return InputSet.from_symbols(net, [s.strip() for s in args.inputs.split(",") if s.strip()])


def _emit(doc: dict, as_json: bool) -> None:
    if as_json:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(report.render_text(doc))


def cmd_analyze(args) -> int:
    net = load(args.file)
    inputs = _inputs(net, args)
    init = initializer_report(net)
    cons = is_consecutive(net)
    basis, verdict = analyze_inputs(net, inputs, args.trials, args.depth, args.seed)
    critical = minimal = None
    if verdict.controllable_ae:
        cert = certify_critical_steps(net, inputs, args.trials, args.depth, args.seed)
        critical, minimal = cert.critical_steps, cert.minimal
    verdicts = [report.verdict_summary(net, inputs, basis, verdict, init, critical, minimal)]
    minimal_sets, search_doc = [], None
    if net.num_steps <= MAX_UNBUDGETED_STEPS:
        search = minimal_input_sets(net, trials=args.trials, depth_cap=args.depth, seed=args.seed)
        search_doc = report.minimal_summary(net, search)
        minimal_sets = search_doc["sets"]
    doc = report.envelope(net, args.seed, report.structure_summary(net, init, cons), verdicts,
                          minimal_sets, minimal_search=search_doc)
    _emit(doc, args.json)
    return 0 if verdict.controllable_ae else 1


def cmd_structure(args) -> int:
    net = load(args.file)
    doc = report.envelope(net, args.seed,
                          report.structure_summary(net, initializer_report(net), is_consecutive(net)))
    _emit(doc, args.json)
    return 0


def cmd_minimal_inputs(args) -> int:
    net = load(args.file)
    search = minimal_input_sets(net, args.budget, trials=args.trials, depth_cap=args.depth,
                                seed=args.seed)
    summary = report.minimal_summary(net, search)
    init = initializer_report(net)
    doc = report.envelope(net, args.seed,
                          report.structure_summary(net, init, is_consecutive(net)),
                          minimal_sets=summary["sets"], minimal_search=summary)
    _emit(doc, args.json)
    return 0


def cmd_rank_at(args) -> int:
    net = load(args.file)
    inputs = _inputs(net, args)
    point = point_from_mappings(net, parse_assignments(args.point), parse_assignments(args.params))
    basis, pr = rank_at(net, inputs, point, args.trials, args.depth, args.seed)
    summary = report.point_rank_summary(net, inputs, basis, pr)
    doc = report.envelope(net, args.seed, point_rank=summary)
    _emit(doc, args.json)
    return 0 if summary["controllable_at_point"] else 1


def cmd_linearize(args) -> int:
    net = load(args.file)
    point = point_from_mappings(net, parse_assignments(args.point), parse_assignments(args.params))
    lin = linearize_at(net, point.x, point.k)
    kal = kalman_rank(lin)
    doc = report.envelope(net, args.seed, linearization=report.linearization_summary(net, lin, kal))
    _emit(doc, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crnlie",
        description="Lie-algebraic controllability analysis of mass-action reaction networks.")
    parser.add_argument("--version", action="version", version=f"crnlie {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=False, search=True):
        p.add_argument("file", help=".crn network file")
        if inputs:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--inputs", help="comma-separated rate symbols used as control inputs")
            g.add_argument("--all-inputs", action="store_true",
                           help="every rate coefficient is an input")
        if search:
            p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                           help="random sample points (default %(default)s)")
            p.add_argument("--depth", type=int, default=None,
                           help="bracket depth cap (default 2*M)")
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED,
                       help="RNG seed (default 0xC0FFEE)")
        p.add_argument("--json", action="store_true", help="emit a JSON document")

    p = sub.add_parser("analyze", help="decide controllability for an input set")
    common(p, inputs=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("structure", help="initializers, classes, consecutive order")
    common(p, search=False)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("minimal-inputs", help="smallest controllable input sets")
    common(p)
    p.add_argument("--budget", type=int, default=None,
                   help=f"max input sets to evaluate (required for R > {MAX_UNBUDGETED_STEPS})")
    p.set_defaults(func=cmd_minimal_inputs)

    p = sub.add_parser("rank-at", help="controllability rank at one point")
    common(p, inputs=True)
    p.add_argument("--point", help="species values, e.g. X1=0,X2=1 (unlisted: 1)")
    p.add_argument("--params", help="rate values, e.g. k2=1 (unlisted: 1)")
    p.set_defaults(func=cmd_rank_at)

    p = sub.add_parser("linearize", help="linearization and Kalman rank at a point")
    common(p, search=False)
    p.add_argument("--point", help="species values (unlisted: 1)")
    p.add_argument("--params", help="rate values (unlisted: 1)")
    p.set_defaults(func=cmd_linearize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except (ParseError, NetworkError, UsageError, OSError, ValueError) as exc:
        sys.stderr.write(f"crnlie: error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
