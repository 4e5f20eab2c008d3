"""JSON interchange for scalars, matrices, pairs, parameter arrays and module specs.

Scalars are strings in the field's text grammar. Every reader takes the
JSON path of the object it parses so that errors point at the offending
location, for example ``$.A.entries[1][0]``.
"""

from __future__ import annotations

from typing import Optional

from .core import AffineWitness, BidiagonalPair, ParameterArray
from .errors import ParseError
from .field import RATIONAL_FUNCTIONS, RATIONALS, FieldContext
from .linalg import Matrix
from .modules import SL2, UQSL2, ModuleSpec, Summand

__all__ = [
    "context_from_json",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "pair_to_json",
    "pair_from_json",
    "params_to_json",
    "params_from_json",
    "spec_from_json",
    "witness_from_json",
]


def _expect(obj, kind, path: str, what: str):
    if not isinstance(obj, kind) or isinstance(obj, bool):
        raise ParseError(f"expected {what}", path)
    return obj


def _member(obj: dict, key: str, path: str):
    if key not in obj:
        raise ParseError(f"missing key {key!r}", path)
    return obj[key]


def context_from_json(obj: dict, path: str = "$", default: Optional[FieldContext] = None) -> FieldContext:
    """Read the optional ``field`` / ``q`` keys of ``obj``."""
    kind = obj.get("field")
    if kind is None:
        if default is not None:
            return default
        kind = RATIONALS
    if kind not in (RATIONALS, RATIONAL_FUNCTIONS):
        raise ParseError(f"field must be 'Q' or 'Qq', got {kind!r}", f"{path}.field")
    q = obj.get("q")
    if q is None:
        return FieldContext(kind)
    if kind != RATIONALS:
        raise ParseError("a numeric q only applies to the field Q", f"{path}.q")
    _expect(q, str, f"{path}.q", "a rational string")
    try:
        return FieldContext(kind, q)
    except ValueError as exc:
        raise ParseError(str(exc), f"{path}.q") from None


def scalar_from_json(value, ctx: FieldContext, path: str):
    if isinstance(value, int) and not isinstance(value, bool):
        return ctx(value)
    _expect(value, str, path, "a scalar string")
    try:
        return ctx.parse(value)
    except ParseError as exc:
        raise ParseError(str(exc).split(": ", 1)[-1], path) from None


def _scalars(values, ctx: FieldContext, path: str) -> list:
    _expect(values, list, path, "a list of scalars")
    return [scalar_from_json(v, ctx, f"{path}[{i}]") for i, v in enumerate(values)]


def _context_fields(ctx: FieldContext) -> dict:
    out = {"field": ctx.kind}
    if ctx.numeric_q is not None:
        out["q"] = str(ctx.numeric_q)
    return out


def matrix_to_json(m: Matrix) -> dict:
    out = _context_fields(m.ctx)
    out.update({"rows": m.nrows, "cols": m.ncols, "entries": m.to_strings()})
    return out


def matrix_from_json(obj, path: str = "$", ctx: Optional[FieldContext] = None) -> Matrix:
    """Parse a matrix; a ``field`` key inside ``obj`` must agree with ``ctx`` if both are given."""
    _expect(obj, dict, path, "a matrix object")
    own = context_from_json(obj, path, ctx)
    if ctx is not None and own != ctx:
        raise ParseError(f"matrix field {own} differs from {ctx}", f"{path}.field")
    ctx = own
    entries = _expect(_member(obj, "entries", path), list, f"{path}.entries", "a list of rows")
    nrows = obj.get("rows", len(entries))
    _expect(nrows, int, f"{path}.rows", "an integer")
    if nrows != len(entries):
        raise ParseError(f"rows is {nrows} but {len(entries)} rows are given", f"{path}.rows")
    rows = [_scalars(r, ctx, f"{path}.entries[{i}]") for i, r in enumerate(entries)]
    ncols = obj.get("cols", len(rows[0]) if rows else 0)
    _expect(ncols, int, f"{path}.cols", "an integer")
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise ParseError(f"row has {len(r)} entries, expected {ncols}", f"{path}.entries[{i}]")
    if nrows == 0 or ncols == 0:
        raise ParseError("matrices must be nonempty", path)
    return Matrix._raw(tuple(tuple(r) for r in rows), ctx, ncols)


def pair_to_json(pair: BidiagonalPair, hints: bool = True) -> dict:
    """Pair JSON; eigenvalue hints make re-verification independent of root discovery."""
    out = {"A": matrix_to_json(pair.A), "Astar": matrix_to_json(pair.Astar)}
    if hints:
        fmt = pair.ctx.format
        out["hints"] = {"theta": [fmt(t) for t in pair.theta], "theta_star": [fmt(t) for t in pair.theta_star]}
    return out


def pair_from_json(obj, path: str = "$", ctx: Optional[FieldContext] = None):
    """Return (A, A*, hints or None). The field comes from ``ctx`` or from the A matrix."""
    _expect(obj, dict, path, "a pair object")
    a_obj = _expect(_member(obj, "A", path), dict, f"{path}.A", "a matrix object")
    if ctx is None:
        ctx = context_from_json(a_obj, f"{path}.A")
    A = matrix_from_json(a_obj, f"{path}.A", ctx)
    As = matrix_from_json(_member(obj, "Astar", path), f"{path}.Astar", ctx)
    hints = None
    if obj.get("hints") is not None:
        h = _expect(obj["hints"], dict, f"{path}.hints", "an object")
        hints = (
            _scalars(h["theta"], ctx, f"{path}.hints.theta") if "theta" in h else None,
            _scalars(h["theta_star"], ctx, f"{path}.hints.theta_star") if "theta_star" in h else None,
        )
    return A, As, hints


def params_to_json(params: ParameterArray, ctx: FieldContext) -> dict:
    return params.to_dict(ctx)


def params_from_json(obj, ctx: FieldContext, path: str = "$") -> ParameterArray:
    _expect(obj, dict, path, "a parameter array object")
    theta = _scalars(_member(obj, "theta", path), ctx, f"{path}.theta")
    theta_star = _scalars(_member(obj, "theta_star", path), ctx, f"{path}.theta_star")
    rho = _expect(_member(obj, "rho", path), list, f"{path}.rho", "a list of integers")
    for i, r in enumerate(rho):
        _expect(r, int, f"{path}.rho[{i}]", "an integer")
    return ParameterArray(theta, theta_star, rho)


def spec_from_json(obj, path: str = "$") -> ModuleSpec:
    _expect(obj, dict, path, "a module spec object")
    variant = _member(obj, "variant", path)
    if variant not in (SL2, UQSL2):
        raise ParseError(f"variant must be 'sl2' or 'uq', got {variant!r}", f"{path}.variant")
    items = _expect(_member(obj, "summands", path), list, f"{path}.summands", "a list")
    if not items:
        raise ParseError("at least one summand is required", f"{path}.summands")
    summands = []
    for i, item in enumerate(items):
        p = f"{path}.summands[{i}]"
        _expect(item, dict, p, "a summand object")
        d = _expect(_member(item, "d", p), int, f"{p}.d", "an integer")
        m = _expect(item.get("m", 1), int, f"{p}.m", "an integer")
        eps = _expect(item.get("eps", 1), int, f"{p}.eps", "an integer")
        if d < 0:
            raise ParseError("d must be nonnegative", f"{p}.d")
        if m < 1:
            raise ParseError("m must be positive", f"{p}.m")
        if eps not in (1, -1):
            raise ParseError("eps must be 1 or -1", f"{p}.eps")
        if variant == SL2 and eps != 1:
            raise ParseError("sl2 summands carry no sign", f"{p}.eps")
        summands.append(Summand(d, m, eps))
    return ModuleSpec(variant, tuple(summands))


def witness_from_json(obj, ctx: FieldContext, path: str = "$") -> AffineWitness:
    _expect(obj, dict, path, "a witness object")
    vals = [scalar_from_json(_member(obj, k, path), ctx, f"{path}.{k}") for k in ("p", "q_scale", "r", "s")]
    return AffineWitness(*vals)
