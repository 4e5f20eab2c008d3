"""Matrix models of finite-dimensional sl2 and U_q(sl2) modules.

Irreducible modules are written in the weight basis v_0, ..., v_d; a direct
sum concatenates the summand bases in order. The module also carries the
equitable generators (X, Y, Z for sl2; x, x^-1, y, z for U_q(sl2)).

The two bridges to bidiagonal pairs live here as well: building a pair
from a parameter array, and recovering the module structure carried by a
reduced pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from .core import BidiagonalPair, ParameterArray, verify
from .errors import (
    ClassificationFailed,
    InvariantViolation,
    NoInvertibleSolution,
    NotReduced,
    ShapeInvalid,
)
from .field import FieldContext
from .linalg import Matrix, _kernel_from_rref, _rref_rows, block_diagonal
from .relations import (
    BASE_ONE,
    BASE_Q,
    EigenvalueForm,
    ReducedForm,
    classify_check,
    eigenvalue_form,
    reduced_variant,
)
from .structure import equitable_failures, third_operator

__all__ = [
    "SL2",
    "UQSL2",
    "Summand",
    "ModuleSpec",
    "ModuleMatrices",
    "SegregationReport",
    "sl2_irreducible",
    "uq_irreducible",
    "direct_sum",
    "module_from_shape",
    "pair_from_parameter_array",
    "module_from_reduced_pair",
    "solve_cycling_operator",
    "relation_failures",
]

SL2 = "sl2"
UQSL2 = "uq"


@dataclass(frozen=True)
class Summand:
    d: int
    m: int = 1
    eps: int = 1


@dataclass(frozen=True)
class ModuleSpec:
    variant: str
    summands: tuple

    def __post_init__(self):
        if self.variant not in (SL2, UQSL2):
            raise ValueError(f"unknown module variant {self.variant!r}")
        object.__setattr__(self, "summands", tuple(self.summands))
        for s in self.summands:
            if s.d < 0 or s.m < 1 or s.eps not in (1, -1):
                raise ValueError(f"invalid summand {s}")
            if self.variant == SL2 and s.eps != 1:
                raise ValueError("sl2 summands carry no sign")

    @property
    def dimension(self) -> int:
        return sum(s.m * (s.d + 1) for s in self.summands)

    @property
    def segregated(self) -> bool:
        parities = {s.d % 2 for s in self.summands}
        signs = {s.eps for s in self.summands}
        return len(parities) <= 1 and signs <= {1}

    def to_dict(self) -> dict:
        out = []
        for s in self.summands:
            item = {"d": s.d, "m": s.m}
            if self.variant == UQSL2:
                item["eps"] = s.eps
            out.append(item)
        return {"variant": self.variant, "summands": out}


@dataclass(frozen=True)
class ModuleMatrices:
    variant: str
    generators: dict
    equitable: dict
    ctx: FieldContext
    q: object = None
    spec: Optional[ModuleSpec] = None

    @property
    def dimension(self) -> int:
        return next(iter(self.generators.values())).nrows

    def to_dict(self) -> dict:
        from .jsonio import matrix_to_json

        return {
            "variant": self.variant,
            "dimension": self.dimension,
            "q": None if self.q is None else self.ctx.format(self.q),
            "generators": {k: matrix_to_json(m) for k, m in self.generators.items()},
            "equitable": {k: matrix_to_json(m) for k, m in self.equitable.items()},
        }


@dataclass
class SegregationReport:
    components: dict
    segregated: bool

    def to_dict(self) -> dict:
        return {"components": dict(self.components), "segregated": self.segregated}


# -- relation checks -----------------------------------------------------------


def relation_failures(m: ModuleMatrices) -> list:
    """Names of the defining or equitable relations that fail."""
    ctx = m.ctx
    g, eq = m.generators, m.equitable
    n = m.dimension
    ident = Matrix.identity(n, ctx)
    failed = []
    if m.variant == SL2:
        h, e, f = g["h"], g["e"], g["f"]
        if h @ e - e @ h != e * 2:
            failed.append("[h,e]=2e")
        if h @ f - f @ h != f * (-2):
            failed.append("[h,f]=-2f")
        if e @ f - f @ e != h:
            failed.append("[e,f]=h")
        failed += equitable_failures(ReducedForm(SL2), eq["X"], eq["Y"], eq["Z"])
    else:
        q = m.q
        k, ki, e, f = g["k"], g["k_inv"], g["e"], g["f"]
        if k @ ki != ident or ki @ k != ident:
            failed.append("k k^-1=1")
        if k @ e != (e @ k) * (q * q):
            failed.append("ke=q^2ek")
        if k @ f != (f @ k) * (1 / (q * q)):
            failed.append("kf=q^-2fk")
        if e @ f - f @ e != (k - ki) * (1 / (q - 1 / q)):
            failed.append("ef-fe")
        x, xi = eq["x"], eq["x_inv"]
        if x @ xi != ident or xi @ x != ident:
            failed.append("x x^-1=1")
        failed += equitable_failures(ReducedForm(UQSL2, q), x, eq["y"], eq["z"])
    return failed


# -- irreducible modules -------------------------------------------------------


def _lowering(values, n, ctx) -> Matrix:
    # column i holds the image of v_i, which is values[i] * v_(i+1)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i, c in enumerate(values):
        rows[i + 1][i] = ctx(c)
    return Matrix._raw(tuple(tuple(r) for r in rows), ctx, n)


def _raising(values, n, ctx) -> Matrix:
    # column i (i >= 1) holds values[i-1] * v_(i-1)
    rows = [[ctx.zero] * n for _ in range(n)]
    for i, c in enumerate(values, start=1):
        rows[i - 1][i] = ctx(c)
    return Matrix._raw(tuple(tuple(r) for r in rows), ctx, n)


def sl2_irreducible(d: int, ctx: FieldContext) -> ModuleMatrices:
    """V(d): h v_i = (d-2i) v_i, f v_i = (i+1) v_(i+1), e v_i = (d-i+1) v_(i-1)."""
    n = d + 1
    h = Matrix.diagonal([d - 2 * i for i in range(n)], ctx)
    f = _lowering([i + 1 for i in range(d)], n, ctx)
    e = _raising([d - i + 1 for i in range(1, n)], n, ctx)
    m = _sl2_module(h, e, f, ctx)
    _assert_relations(m)
    return m


def _sl2_module(h, e, f, ctx, spec=None) -> ModuleMatrices:
    X = e * 2 - h
    Y = f * (-2) - h
    return ModuleMatrices(SL2, {"h": h, "e": e, "f": f}, {"X": X, "Y": Y, "Z": h}, ctx, None, spec)


def _q_int(n: int, q):
    total = q - q
    for j in range(n):
        total = total + q ** (n - 1 - 2 * j)
    return total


def uq_irreducible(d: int, eps: int, ctx: FieldContext, q=None) -> ModuleMatrices:
    """V(d, eps): k v_i = eps q^(d-2i) v_i, f v_i = [i+1] v_(i+1),
    e v_i = eps [d-i+1] v_(i-1)."""
    if eps not in (1, -1):
        raise ValueError("eps must be 1 or -1")
    q = ctx.q if q is None else ctx(q)
    n = d + 1
    k = Matrix.diagonal([q ** (d - 2 * i) * eps for i in range(n)], ctx)
    k_inv = Matrix.diagonal([q ** (2 * i - d) * eps for i in range(n)], ctx)
    f = _lowering([_q_int(i + 1, q) for i in range(d)], n, ctx)
    e = _raising([_q_int(d - i + 1, q) * eps for i in range(1, n)], n, ctx)
    m = _uq_module(k, k_inv, e, f, ctx, q)
    _assert_relations(m)
    return m


def _uq_module(k, k_inv, e, f, ctx, q, spec=None) -> ModuleMatrices:
    scale = q - 1 / q
    y = k_inv + f * scale
    z = k_inv - (k_inv @ e) * (q * scale)
    gens = {"k": k, "k_inv": k_inv, "e": e, "f": f}
    return ModuleMatrices(UQSL2, gens, {"x": k, "x_inv": k_inv, "y": y, "z": z}, ctx, q, spec)


def _assert_relations(m: ModuleMatrices):
    failed = relation_failures(m)
    if failed:
        raise InvariantViolation(f"module relations fail: {', '.join(failed)}")


def direct_sum(spec: ModuleSpec, ctx: FieldContext, q=None):
    """Block-diagonal module for ``spec`` plus its segregation report."""
    blocks = []
    for s in spec.summands:
        for _ in range(s.m):
            if spec.variant == SL2:
                blocks.append(sl2_irreducible(s.d, ctx))
            else:
                blocks.append(uq_irreducible(s.d, s.eps, ctx, q))
    if not blocks:
        raise ShapeInvalid("a module needs at least one summand")
    names_g = list(blocks[0].generators)
    names_e = list(blocks[0].equitable)
    gens = {k: block_diagonal([b.generators[k] for b in blocks], ctx) for k in names_g}
    eqs = {k: block_diagonal([b.equitable[k] for b in blocks], ctx) for k in names_e}
    module = ModuleMatrices(spec.variant, gens, eqs, ctx, blocks[0].q, spec)
    comps: dict = {}
    for s in spec.summands:
        parity = "even" if s.d % 2 == 0 else "odd"
        key = parity if spec.variant == SL2 else f"{parity},{'+1' if s.eps == 1 else '-1'}"
        comps[key] = comps.get(key, 0) + s.m * (s.d + 1)
    if spec.variant == SL2:
        for key in ("even", "odd"):
            comps.setdefault(key, 0)
    else:
        for key in ("even,+1", "even,-1", "odd,+1", "odd,-1"):
            comps.setdefault(key, 0)
    nonzero = [k for k, v in comps.items() if v]
    return module, SegregationReport(dict(sorted(comps.items())), len(nonzero) == 1 and (spec.variant == SL2 or nonzero[0].endswith("+1")))


def module_from_shape(d: int, rho, variant: str = SL2) -> ModuleSpec:
    """The segregated module whose weight spaces have dimensions rho."""
    rho = list(rho)
    if len(rho) != d + 1:
        raise ShapeInvalid(f"shape has length {len(rho)}, expected {d + 1}")
    if not all(isinstance(r, int) and not isinstance(r, bool) and r > 0 for r in rho):
        raise ShapeInvalid("shape entries must be positive integers")
    if any(rho[i] != rho[d - i] for i in range(d + 1)):
        raise ShapeInvalid("shape is not symmetric")
    if any(rho[i] > rho[i + 1] for i in range((d + 1) // 2)):
        raise ShapeInvalid("shape does not increase up to the middle")
    summands = []
    for j in range(d // 2 + 1):
        m = rho[j] - (rho[j - 1] if j else 0)
        if m:
            summands.append(Summand(d - 2 * j, m, 1))
    return ModuleSpec(variant, tuple(summands))


# -- bridges -------------------------------------------------------------------


def pair_from_parameter_array(params: ParameterArray, ctx: FieldContext, q=None) -> BidiagonalPair:
    """Build a bidiagonal pair with the given parameter array.

    The equitable pair (Y, Z) or (y, z) on the segregated module of the
    shape is a reduced pair; affine maps then move its eigenvalues into
    place. The result is verified and its parameter array compared exactly.
    """
    params = ParameterArray([ctx(t) for t in params.theta], [ctx(t) for t in params.theta_star], params.rho)
    verdict = classify_check(params)
    if not verdict.passed:
        raise ClassificationFailed(f"classification fails: {', '.join(verdict.failed)}", verdict)
    d = params.diameter
    form = _small_q_form(params, ctx, q) if d <= 1 else None
    if form is None:
        form = eigenvalue_form(params, verdict.b, ctx, q)
    if form.variant == BASE_ONE:
        module, _ = direct_sum(module_from_shape(d, params.rho, SL2), ctx)
        Y, Z = module.equitable["Y"], module.equitable["Z"]
        A = (Y * form.b2).shift(form.b2 * d + form.b1)
        As = (Z * form.c2).shift(form.c1 - form.c2 * d)
    else:
        qd = form.q ** d
        module, _ = direct_sum(module_from_shape(d, params.rho, UQSL2), ctx, form.q)
        y, z = module.equitable["y"], module.equitable["z"]
        A = (y * (form.b2 / qd)).shift(form.b1)
        As = (z * (form.c2 * qd)).shift(form.c1)
    report = verify(A, As, (params.theta, params.theta_star))
    if not report.is_bidiagonal:
        raise InvariantViolation(f"constructed pair fails verification: {report.failures}")
    if report.parameter_array != params:
        raise InvariantViolation("constructed pair has a different parameter array")
    return report.pair


def _small_q_form(params: ParameterArray, ctx: FieldContext, q=None):
    """For d <= 1, the q-pattern form when the array is the reduced q array.

    The base is 1 by convention there, but such an array is realised by the
    equitable pair (y, z) of V(d, +1) directly.
    """
    cands = [c for c in (q, ctx.q if ctx.has_q else None) if c is not None]
    d = params.diameter
    for c in cands:
        for qq in (ctx(c), -ctx(c)):
            th = [qq ** (d - 2 * i) for i in range(d + 1)]
            ts = [qq ** (2 * i - d) for i in range(d + 1)]
            if list(params.theta) == th and list(params.theta_star) == ts:
                zero = ctx.zero
                return EigenvalueForm(BASE_Q, zero, qq ** d, zero, qq ** (-d), qq)
    return None


def _multiplicities(e: Matrix, spaces, d: int, ctx):
    kernel = e.kernel()
    return [kernel.intersect(spaces[j]).dim for j in range(d // 2 + 1)]


def module_from_reduced_pair(pair: BidiagonalPair, q=None):
    """The sl2 or U_q(sl2) module structure carried by a reduced pair.

    Returns (ModuleMatrices, ModuleSpec). The equitable generators are
    (third operator, A, A*); the classical generators are recovered by
    inverting the equitable presentation, and every relation is asserted.
    """
    form = reduced_variant(pair, q)
    if form is None:
        raise NotReduced("module recovery needs a reduced pair")
    ctx, d, n = pair.ctx, pair.d, pair.n
    B = third_operator(pair, form.q)
    if form.variant == SL2:
        X, Y, Z = B, pair.A, pair.Astar
        e = (X + Z) * ctx("1/2")
        f = (Y + Z) * ctx("-1/2")
        module = ModuleMatrices(SL2, {"h": Z, "e": e, "f": f}, {"X": X, "Y": Y, "Z": Z}, ctx)
        # h-eigenvalue d - 2j lives on V*_j
        weight_spaces = pair.eig_star.eigenspaces
    else:
        qq = form.q
        x, y, z = B, pair.A, pair.Astar
        x_inv = x.inverse()
        scale = qq - 1 / qq
        f = (y - x_inv) * (1 / scale)
        e = (Matrix.identity(n, ctx) - x @ z) * (1 / (qq * scale))
        module = ModuleMatrices(
            UQSL2,
            {"k": x, "k_inv": x_inv, "e": e, "f": f},
            {"x": x, "x_inv": x_inv, "y": y, "z": z},
            ctx,
            qq,
        )
        # k-eigenvalue q^(d-2j) lives on W_j, the eigenspaces of B'
        from .structure import split_subspaces

        weight_spaces = split_subspaces(pair).spaces
    _assert_relations(module)
    mults = _multiplicities(module.generators["e"], weight_spaces, d, ctx)
    rho = pair.eig.dims
    for j, m in enumerate(mults):
        if m != rho[j] - (rho[j - 1] if j else 0):
            raise InvariantViolation(f"multiplicity of the summand of highest weight {d - 2 * j} is {m}")
    if sum(m * (d - 2 * j + 1) for j, m in enumerate(mults)) != n:
        raise InvariantViolation("summand dimensions do not add up")
    spec = ModuleSpec(form.variant, tuple(Summand(d - 2 * j, m, 1) for j, m in enumerate(mults) if m))
    module = ModuleMatrices(module.variant, module.generators, module.equitable, ctx, module.q, spec)
    return module, spec


def solve_cycling_operator(m: ModuleMatrices, max_terms: int = 6) -> Matrix:
    """An invertible Omega with x Omega = Omega y, y Omega = Omega z, z Omega = Omega x.

    The solution space of the homogeneous system is computed exactly; basis
    elements are tried first, then integer combinations with coefficients
    in -2..2.
    """
    if m.variant != UQSL2:
        raise ValueError("the cycling operator belongs to U_q(sl2) modules")
    ctx = m.ctx
    x, y, z = m.equitable["x"], m.equitable["y"], m.equitable["z"]
    n = m.dimension
    rows = []
    # (L Omega - Omega R)[r][c] = sum_k L[r][k] Omega[k][c] - Omega[r][k] R[k][c]
    for L, R in ((x, y), (y, z), (z, x)):
        for r in range(n):
            for c in range(n):
                row = [ctx.zero] * (n * n)
                for k in range(n):
                    if L.rows[r][k]:
                        row[k * n + c] += L.rows[r][k]
                    if R.rows[k][c]:
                        row[r * n + k] -= R.rows[k][c]
                if any(row):
                    rows.append(row)
    red, pivots = _rref_rows(rows, n * n)
    basis = _kernel_from_rref(red, pivots, n * n, ctx.zero, ctx.one)
    if not basis:
        raise NoInvertibleSolution("the conjugation system has only the zero solution")
    mats = [Matrix._raw(tuple(tuple(v[r * n:(r + 1) * n]) for r in range(n)), ctx, n) for v in basis]

    def candidates():
        yield from mats
        k = min(len(mats), max_terms)
        for coeffs in product(range(-2, 3), repeat=k):
            if sum(1 for c in coeffs if c) < 2:
                continue
            total = Matrix.zeros(n, n, ctx)
            for c, mat in zip(coeffs, mats):
                if c:
                    total = total + mat * c
            yield total

    for omega in candidates():
        if omega.is_invertible():
            if x @ omega != omega @ y or y @ omega != omega @ z or z @ omega != omega @ x:
                raise InvariantViolation("solution fails the conjugation identities")
            return omega
    raise NoInvertibleSolution("no invertible element found among the searched combinations")
