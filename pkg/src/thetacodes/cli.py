"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 bad input, 3 unsupported input or
failed precondition, 4 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import __version__, report
from .completion import (augment_circular, augment_invariant, augment_prefix, build_block,
                         complete_sync, embed_complete, pick_witness)
from .errors import BudgetExhausted, ConstructionError, InputError, PreconditionError
from .hull import DEFAULT_BUDGET, defect_report
from .problem import parse_problem
from .properties import DEFAULT_CAP, build_report

EXIT_OK, EXIT_BUG, EXIT_INPUT, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3, 4
DEFAULT_MAX_ENUM = 24


def cmd_check(problem, args):
    rep = build_report(problem.theta, problem.word_set, delay_cap=args.delay_cap,
                       sync_cap=args.sync_k)
    settings = {"delay_cap": args.delay_cap, "sync_cap": args.sync_k}
    return report.envelope("check", problem, report.code_report_to_dict(rep), settings)


def cmd_hull(problem, args):
    result = defect_report(problem.theta, problem.word_set, budget=args.budget)
    return report.envelope("hull", problem, report.hull_to_dict(result), {"budget": args.budget})


def cmd_augment(problem, args):
    theta, X = problem.theta, problem.word_set
    witness = args.witness or problem.witness
    settings = {"family": args.family, "witness": witness, "sync_k": args.sync_k,
                "max_enum": args.max_enum}
    result: dict = {"family": args.family}
    if args.family == "sync":
        sc = complete_sync(theta, X, args.sync_k, enum_cap=args.max_enum)
        result.update(report.sync_to_dict(sc, args.max_enum))
    elif args.family == "prefix":
        out = augment_prefix(theta, X)
        result.update(words=report._sorted(out), added=report._sorted(out - X))
    else:
        fn = augment_invariant if args.family == "invariant" else augment_circular
        out = fn(theta, X, witness)
        spec = build_block(theta, pick_witness(X, theta.alphabet, witness), X)
        result.update(block=report.block_to_dict(spec), words=report._sorted(out),
                      added=report._sorted(out - X))
    return report.envelope("augment", problem, result, settings)


def cmd_complete(problem, args):
    cr = embed_complete(problem.theta, problem.word_set)
    return report.envelope("complete", problem, report.completion_to_dict(cr, args.max_enum),
                           {"max_enum": args.max_enum})


def _write_atomic(path: Path, text: str):
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thetacodes",
        description="Codes invariant under a literal (anti)morphism.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", type=Path, help="problem file")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", type=Path, help="write the report here instead of stdout")

    p = sub.add_parser("check", help="decide code properties")
    common(p)
    p.add_argument("--delay-cap", type=int, default=DEFAULT_CAP, metavar="N",
                   help="largest deciphering delay tried (default %(default)s)")
    p.add_argument("--sync-k", type=int, default=DEFAULT_CAP, metavar="K",
                   help="largest synchronization delay tried (default %(default)s)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("hull", help="theta-invariant free hull and defect bound")
    common(p)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_hull)

    p = sub.add_parser("augment", help="grow a non-complete invariant code")
    common(p)
    p.add_argument("--family", choices=("invariant", "prefix", "circular", "sync"),
                   default="invariant")
    p.add_argument("--witness", metavar="W", help="non-factor word to build the block around")
    p.add_argument("--sync-k", type=int, default=1, metavar="K")
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, metavar="L")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("complete", help="embed into a complete invariant code")
    common(p)
    p.add_argument("--max-enum", type=int, default=DEFAULT_MAX_ENUM, metavar="L")
    p.set_defaults(func=cmd_complete)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = parse_problem(args.file.read_text())
        doc = args.func(problem, args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        extra = f" [property: {exc.prop}]" if exc.prop else ""
        if exc.witness is not None:
            extra += f" [witness: {exc.witness!r}]"
        print(f"error: {exc}{extra}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExhausted as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConstructionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG
    text = report.render(doc, args.format)
    if args.output:
        _write_atomic(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
