"""Command-line entry point.

Exit codes: 0 when every check holds, 1 when something is refuted or
unmatched, 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import catalog
from .cube import cube_dot, describe_edge, dumps, run_cube
from .errors import ModalCubeError
from .formula import formula_parse, frame_find_failure, parse_axiom
from .kripke import (
    Frame,
    check_condition,
    frame_parse,
    parse_condition,
    parse_conditions,
    world_name,
)
from .search import SearchBudget, find_countermodel, verify_correspondence, verify_equivalence

EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2


def _read_frame(source: str) -> Frame:
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    return frame_parse(text)


def _budget(args: argparse.Namespace) -> SearchBudget:
    return SearchBudget(
        max_worlds=args.max_worlds,
        use_canonical_pruning=args.prune_iso,
        parallelism_hint=args.jobs,
    )


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_check_frame(args: argparse.Namespace) -> int:
    frame = _read_frame(args.frame)
    wanted = [parse_condition(c) for c in args.conditions.split(",") if c.strip()]
    results = [(c, check_condition(frame, args.relation, c)) for c in wanted]
    if args.json:
        print(dumps({c.label: ok for c, ok in results}), end="")
    else:
        for c, ok in results:
            print(f"{c.label}: {'true' if ok else 'false'}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_REFUTED


def cmd_valid(args: argparse.Namespace) -> int:
    frame = _read_frame(args.frame)
    formula = formula_parse(args.formula)
    failure = frame_find_failure(frame, formula)
    if args.json:
        out = {"formula": args.formula, "valid": failure is None, "failure": None}
        if failure is not None:
            valuation, world = failure
            out["failure"] = {"valuation": valuation.to_json(), "world": world_name(world)}
        print(dumps(out), end="")
    elif failure is None:
        print("VALID")
    else:
        valuation, world = failure
        shown = valuation.render(frame.n_worlds) or "(no variables)"
        print(f"INVALID: {shown}, world {world_name(world)}")
    return EXIT_OK if failure is None else EXIT_REFUTED


def cmd_cube(args: argparse.Namespace) -> int:
    report = run_cube(_budget(args))
    if args.out:
        _write(args.out, dumps(report.to_json()))
    if args.dot:
        _write(args.dot, cube_dot(report))
    if args.json:
        print(dumps(report.to_json()), end="")
    else:
        summary = report.payload()["summary"]
        print(f"bound: {report.bound} worlds")
        print(f"correspondences: {summary['correspondences_hold']}/{len(report.correspondences)} hold")
        print(f"equivalences: {summary['equivalences_hold']}/{len(report.equivalences)} hold")
        print(f"edges: {summary['edges_matched']}/{summary['edges_total']} match expected witness sizes")
        print(f"fixtures: {summary['fixtures_ok']}/{len(report.fixtures)} ok")
        for rec in report.edges:
            print("  " + describe_edge(rec))
    if report.green:
        print("GREEN", file=sys.stderr)
        return EXIT_OK
    for item in report.red_items():
        line = describe_edge(item) if "expected_size" in item else dumps(item).strip()
        print(f"RED: {line}", file=sys.stderr)
    return EXIT_REFUTED


def cmd_witness(args: argparse.Namespace) -> int:
    holds, fails = parse_conditions(args.holds), parse_conditions(args.fails)
    witness = find_countermodel(holds, fails, _budget(args))
    if args.json:
        print(dumps({
            "holds": [c.label for c in sorted(holds)],
            "fails": [c.label for c in sorted(fails)],
            "bound": args.max_worlds,
            "witness": witness.to_json() if witness else None,
        }), end="")
    elif witness is None:
        print(f"none within bound ({args.max_worlds} worlds)")
    else:
        print(f"{witness.size}-world witness")
        print(witness.render())
    return EXIT_OK if witness is not None else EXIT_REFUTED


def _print_report(report, as_json: bool) -> int:
    if as_json:
        print(dumps(report.to_json()), end="")
    else:
        print(f"{report.claim}: {report.result.upper()} "
              f"(up to {report.bound} worlds, {report.frames_checked} frames checked)")
        if report.detail:
            print(report.detail)
        if report.witness is not None:
            print(report.witness.render())
    return EXIT_OK if report.holds else EXIT_REFUTED


def cmd_correspond(args: argparse.Namespace) -> int:
    axiom = parse_axiom(args.axiom)
    cond = parse_condition(args.condition) if args.condition else catalog.AXIOM_CONDITION[axiom]
    return _print_report(verify_correspondence(cond, axiom, _budget(args)), args.json)


def cmd_equiv(args: argparse.Namespace) -> int:
    left, right = parse_conditions(args.left), parse_conditions(args.right)
    return _print_report(verify_equivalence(left, right, _budget(args)), args.json)


def cmd_catalog(args: argparse.Namespace) -> int:
    text = dumps(catalog.catalog_json())
    if args.out:
        _write(args.out, text)
    else:
        print(text, end="")
    return EXIT_OK


def _add_budget(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-worlds", type=int, default=4, metavar="N", help="largest frame size searched (default 4)")
    p.add_argument("--prune-iso", action="store_true", help="enumerate one frame per isomorphism class")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modalcube", description="Kripke frames and the modal logic cube.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-frame", help="check frame conditions on a frame file")
    p.add_argument("--frame", required=True, metavar="FILE|-")
    p.add_argument("--conditions", required=True, help="comma list of refl,sym,ser,trans,eucl")
    p.add_argument("--relation", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_frame)

    p = sub.add_parser("valid", help="decide frame validity of a formula")
    p.add_argument("--frame", required=True, metavar="FILE|-")
    p.add_argument("--formula", required=True, metavar="STR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_valid)

    p = sub.add_parser("cube", help="verify the whole cube")
    _add_budget(p)
    p.add_argument("--out", metavar="FILE", help="write the JSON report here")
    p.add_argument("--dot", metavar="FILE", help="write a Graphviz digraph here")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cube)

    p = sub.add_parser("witness", help="find a least frame meeting --holds and violating --fails")
    p.add_argument("--holds", default="", metavar="CONDS")
    p.add_argument("--fails", required=True, metavar="CONDS")
    _add_budget(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("correspond", help="check an axiom against its frame condition")
    p.add_argument("--axiom", required=True, help="M, B, D, 4 or 5")
    p.add_argument("--condition", help="override the paired condition")
    _add_budget(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_correspond)

    p = sub.add_parser("equiv", help="check two condition sets for equivalence")
    p.add_argument("--left", required=True, metavar="CONDS")
    p.add_argument("--right", required=True, metavar="CONDS")
    _add_budget(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("catalog", help="export the cube catalog as JSON")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ModalCubeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
