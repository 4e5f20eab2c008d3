"""Command-line front end: ``bidiag <command> [inputs] [options]``.

Every command reads JSON (a path, or ``-`` for standard input) and writes
JSON. Exit status: 0 success or positive verdict, 1 negative verdict,
2 input or usage error, 3 eigenvalues or roots outside the working field.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .core import verify
from .errors import (
    BidiagonalError,
    ClassificationFailed,
    MissingQ,
    NoSquareRoot,
    NotReduced,
    ParseError,
    Unsupported,
)
from .field import RATIONAL_FUNCTIONS, RATIONALS, FieldContext
from .jsonio import (
    context_from_json,
    matrix_to_json,
    pair_from_json,
    pair_to_json,
    params_from_json,
    spec_from_json,
)
from .modules import direct_sum, pair_from_parameter_array
from .relations import classify_check, fundamental_relation, reduce, relation_polynomials
from .structure import highest_spaces, isomorphism, split_subspaces

OK, NEGATIVE, USAGE, UNSUPPORTED = 0, 1, 2, 3


class Outcome(Exception):
    """Carries an exit status and a JSON payload out of a command."""

    def __init__(self, status: int, payload):
        super().__init__(status)
        self.status = status
        self.payload = payload


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc.msg} at line {exc.lineno}") from None


def _context(args, obj=None) -> FieldContext | None:
    """The field from the command line, falling back to keys inside ``obj``."""
    if args.field is None and args.q is None:
        if isinstance(obj, dict) and "field" in obj:
            return context_from_json(obj)
        return None
    kind = args.field or RATIONALS
    if args.q is not None and kind == RATIONALS:
        try:
            return FieldContext(RATIONALS, args.q)
        except ValueError as exc:
            raise ParseError(f"--q: {exc}") from None
    return FieldContext(kind)


def _explicit_q(args, ctx: FieldContext):
    """``--q`` given with ``--field Qq`` names a specific q(-expression) root."""
    if args.q is not None and ctx.kind == RATIONAL_FUNCTIONS:
        return ctx.parse(args.q)
    return None


def _verified(obj, args):
    A, As, hints = pair_from_json(obj, "$", _context(args))
    report = verify(A, As, hints)
    if not report.is_bidiagonal:
        raise Outcome(NEGATIVE, {"error": "not a bidiagonal pair", "report": report.to_dict()})
    return report


def cmd_verify(obj, args):
    A, As, hints = pair_from_json(obj, "$", _context(args))
    report = verify(A, As, hints)
    return (OK if report.is_bidiagonal else NEGATIVE), report.to_dict()


def cmd_params(obj, args):
    report = _verified(obj, args)
    return OK, report.parameter_array.to_dict(report.ctx)


def cmd_classify(obj, args):
    ctx = _context(args, obj) or FieldContext(RATIONALS)
    params = params_from_json(obj, ctx)
    verdict = classify_check(params)
    return (OK if verdict.passed else NEGATIVE), verdict.to_dict(ctx)


def cmd_construct(obj, args):
    ctx = _context(args, obj) or FieldContext(RATIONALS)
    params = params_from_json(obj, ctx)
    try:
        pair = pair_from_parameter_array(params, ctx, _explicit_q(args, ctx))
    except ClassificationFailed as exc:
        raise Outcome(NEGATIVE, {"error": str(exc), "verdict": exc.verdict.to_dict(ctx)}) from None
    return OK, pair_to_json(pair)


def cmd_reduce(obj, args):
    report = _verified(obj, args)
    ctx = report.ctx
    reduced, witness = reduce(report.pair, _explicit_q(args, ctx))
    return OK, {"pair": pair_to_json(reduced), "witness": witness.to_dict(ctx)}


def cmd_decompose(obj, args):
    pair = _verified(obj, args).pair
    h, hs = highest_spaces(pair)
    return OK, {
        "split": split_subspaces(pair).to_dict(),
        "highest": h.to_dict(),
        "highest_star": hs.to_dict(),
    }


def cmd_relation(obj, args):
    pair = _verified(obj, args).pair
    ctx = pair.ctx
    out = fundamental_relation(pair).to_dict(ctx)
    if pair.d >= 2:
        g, h = relation_polynomials(pair)
        out["g"] = g.to_strings()
        out["h"] = h.to_strings()
    return OK, out


def cmd_module(obj, args):
    spec = spec_from_json(obj)
    ctx = _context(args, obj)
    if ctx is None:
        ctx = FieldContext(RATIONALS if spec.variant == "sl2" else RATIONAL_FUNCTIONS)
    module, seg = direct_sum(spec, ctx, _explicit_q(args, ctx))
    out = module.to_dict()
    out["spec"] = spec.to_dict()
    out["segregation"] = seg.to_dict()
    return OK, out


def cmd_iso(objs, args):
    first, second = (_verified(o, args).pair for o in objs)
    mu = isomorphism(first, second)
    if mu is None:
        return NEGATIVE, {"isomorphic": False, "mu": None}
    return OK, {"isomorphic": True, "mu": matrix_to_json(mu)}


SINGLE = {
    "verify": (cmd_verify, "check the axioms of a bidiagonal pair"),
    "params": (cmd_params, "parameter array of a pair"),
    "classify": (cmd_classify, "evaluate the classification clauses on a parameter array"),
    "construct": (cmd_construct, "build a pair from a parameter array"),
    "reduce": (cmd_reduce, "affinely equivalent reduced pair and witness"),
    "decompose": (cmd_decompose, "split and highest subspace chains"),
    "relation": (cmd_relation, "fundamental relation scalars and relation polynomials"),
    "module": (cmd_module, "generator matrices of a module spec"),
}


def _run_one(name: str, path: str, args) -> tuple:
    """Evaluate one command on one input file, mapping errors to exit codes."""
    try:
        if name == "iso":
            return cmd_iso([_load(p) for p in path], args)
        return SINGLE[name][0](_load(path), args)
    except Outcome as out:
        return out.status, out.payload
    except (Unsupported, NoSquareRoot) as exc:
        hint = "retry with --field Qq" if "Qq" in str(exc) or isinstance(exc, NoSquareRoot) else "supply eigenvalue hints or change the field"
        return UNSUPPORTED, {"error": str(exc), "hint": hint}
    except ParseError as exc:
        return USAGE, {"error": str(exc), "path": exc.path}
    except (MissingQ, NotReduced) as exc:
        return USAGE, {"error": str(exc)}
    except BidiagonalError as exc:
        return USAGE, {"error": f"{type(exc).__name__}: {exc}"}


def _job(task):
    name, path, args = task
    return _run_one(name, path, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bidiag", description="Exact computations with bidiagonal pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", choices=(RATIONALS, RATIONAL_FUNCTIONS), help="working field (default: from input, else Q)")
        p.add_argument("--q", help="numeric q over Q, or a specific q expression over Qq")
        p.add_argument("--output", "-o", help="write JSON here instead of standard output")

    for name, (_, help_text) in SINGLE.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("inputs", nargs="+", help="JSON input files ('-' for standard input)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes when several inputs are given")
        common(p)
    p = sub.add_parser("iso", help="isomorphism between two pairs, or null")
    p.add_argument("inputs", nargs=2, help="two pair JSON files")
    common(p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.command == "iso":
        status, payload = _run_one("iso", args.inputs, args)
    else:
        tasks = [(args.command, path, args) for path in args.inputs]
        if len(tasks) > 1 and args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_job, tasks))
        else:
            results = [_job(t) for t in tasks]
        if len(results) == 1:
            status, payload = results[0]
        else:
            status = max(s for s, _ in results)
            payload = [p for _, p in results]
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
