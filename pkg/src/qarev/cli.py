"""Command-line interface.

Exit codes: 0 success (inconsistent results are data, not errors),
2 parse error in a formula or algebra file, 3 algebra validation failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    Algebra,
    AlgebraFormatError,
    AlgebraLawError,
    BUILTIN_ALGEBRAS,
    builtin_algebra,
    check_laws,
    load_algebra,
)
from .revision import RevisionResult, contract, revise
from .solver import is_consistent, models
from .syntax import ParseError, format_conjunctive, parse


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _CliError(4, f"cannot read {path}: {exc.strerror}") from exc


def _load_algebra(ref: str) -> Algebra:
    if ref in BUILTIN_ALGEBRAS:
        return builtin_algebra(ref)
    text = _read_file(ref)
    try:
        return load_algebra(text)
    except AlgebraLawError as exc:
        raise _CliError(3, f"{ref}: {exc}") from exc
    except AlgebraFormatError as exc:
        raise _CliError(2, f"{ref}: {exc}") from exc


def _parse_file(a: Algebra, path: str):
    try:
        return parse(a, _read_file(path), filename=path)
    except ParseError as exc:
        raise _CliError(2, str(exc)) from exc


def _print_result(a: Algebra, res: RevisionResult, fmt: str, trace: bool):
    delta_text = "undefined" if res.delta is None else str(res.delta)
    dnf_lines = [format_conjunctive(a, cf) for cf in res.result_dnf]
    scenario_lines = res.result_scenarios.format_lines(a)
    if fmt == "json":
        doc = {
            "delta": res.delta,
            "dnf": dnf_lines,
            "scenarios": scenario_lines,
            "pair_report": [[i, j, d, p] for i, j, d, p in res.pair_report],
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"delta = {delta_text}")
        if res.mu_inconsistent:
            print("# nothing satisfies the new belief; result is the inconsistent formula")
        if res.psi_inconsistent:
            print("# old beliefs are inconsistent; result equals the new belief")
        for line in dnf_lines if fmt == "dnf" else scenario_lines:
            print(line)
    if trace and fmt != "json":
        for i, j, d, pruned in res.pair_report:
            print(f"{i}\t{j}\t{d}\t{'true' if pruned else 'false'}")


def _cmd_revise(args) -> int:
    a = _load_algebra(args.algebra)
    psi = _parse_file(a, args.psi)
    mu = _parse_file(a, args.mu)
    op = contract if args.op == "contract" else revise
    res = op(a, psi, mu, prune=not args.no_prune)
    if args.op == "contract" and res.mu_inconsistent:
        print("# warning: a tautology cannot be contracted; result equals the old beliefs")
    _print_result(a, res, args.format, args.trace)
    return 0


def _cmd_distance(args) -> int:
    a = _load_algebra(args.algebra)
    psi = _parse_file(a, args.psi)
    mu = _parse_file(a, args.mu)
    res = revise(a, psi, mu, prune=not args.no_prune)
    print("undefined" if res.delta is None else res.delta)
    return 0


def _cmd_check(args) -> int:
    a = _load_algebra(args.algebra)
    f = _parse_file(a, args.formula)
    print("CONSISTENT" if is_consistent(a, f) else "INCONSISTENT")
    return 0


def _cmd_scenarios(args) -> int:
    a = _load_algebra(args.algebra)
    f = _parse_file(a, args.formula)
    lines = models(a, f).format_lines(a)
    if args.format == "json":
        print(json.dumps({"scenarios": lines}, indent=2))
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_validate(args) -> int:
    a = _load_algebra(args.algebra)
    print(f"algebra {a.name}: {a.size} base relations, {len(a.neighbor_edges)} neighborhood edges")
    failed = False
    for law, ok, detail in check_laws(a):
        print(f"{law}: {'OK' if ok else 'FAIL'} ({detail})")
        failed = failed or not ok
    if failed:
        raise _CliError(3, "algebra law checks failed")
    print("all laws hold")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qarev",
        description="Belief revision in the propositional closure of qualitative algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--algebra", required=True,
                       help="built-in name (allen, rcc8) or algebra file path")

    for op in ("revise", "contract"):
        p = sub.add_parser(op, help=f"{op} old beliefs (--psi) by new ones (--mu)")
        add_common(p)
        p.add_argument("--psi", required=True, help="old-beliefs formula file")
        p.add_argument("--mu", required=True, help="new-beliefs formula file")
        p.add_argument("--format", choices=("dnf", "scenarios", "json"), default="dnf")
        p.add_argument("--trace", action="store_true",
                       help="append the per-pair report (i, j, delta_ij, pruned)")
        p.add_argument("--no-prune", action="store_true",
                       help="disable branch-and-bound pruning (same result, slower)")
        p.set_defaults(func=_cmd_revise, op=op)

    p = sub.add_parser("distance", help="print only the revision distance")
    add_common(p)
    p.add_argument("--psi", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--no-prune", action="store_true")
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("check", help="decide consistency of a formula")
    add_common(p)
    p.add_argument("--formula", required=True)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("scenarios", help="enumerate the models of a formula")
    add_common(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--format", choices=("scenarios", "json"), default="scenarios")
    p.set_defaults(func=_cmd_scenarios)

    p = sub.add_parser("validate-algebra", help="run all algebra law checks")
    add_common(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"qarev: {exc.message}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"qarev: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
