"""Verification of bidiagonal pairs and the data attached to a verified pair."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Optional, Sequence

from .errors import (
    InvariantViolation,
    MixedFieldContexts,
    NotDiagonalizable,
    NotSquare,
    ZeroScale,
)
from .field import FieldContext
from .linalg import Matrix, Subspace, eigendecompose

__all__ = [
    "EigenData",
    "BidiagonalPair",
    "ParameterArray",
    "AffineWitness",
    "Finding",
    "VerificationReport",
    "verify",
    "parameter_array",
    "dual",
    "affine",
]


@dataclass(frozen=True, eq=False)
class EigenData:
    """Ordered eigenvalues and eigenspaces of one operator of a pair.

    ``eigenbasis`` concatenates the eigenspace bases in order, so a matrix
    written in eigenbasis coordinates splits into blocks indexed by
    eigenspace. Projectors are derived from it on demand.
    """

    eigenvalues: tuple
    eigenspaces: tuple
    ctx: FieldContext

    @property
    def diameter(self) -> int:
        return len(self.eigenvalues) - 1

    @property
    def dims(self) -> tuple:
        return tuple(s.dim for s in self.eigenspaces)

    @property
    def ambient_dim(self) -> int:
        return self.eigenspaces[0].ambient_dim

    @cached_property
    def offsets(self) -> tuple:
        out, acc = [], 0
        for s in self.eigenspaces:
            out.append(acc)
            acc += s.dim
        out.append(acc)
        return tuple(out)

    @cached_property
    def eigenbasis(self) -> Matrix:
        cols = [v for s in self.eigenspaces for v in s.vectors]
        return Matrix.from_columns(cols, self.ctx, self.ambient_dim)

    @cached_property
    def eigenbasis_inverse(self) -> Matrix:
        return self.eigenbasis.inverse()

    def coordinates(self, m: Matrix) -> Matrix:
        """``m`` written in the eigenbasis: S^-1 m S."""
        return self.eigenbasis_inverse @ (m @ self.eigenbasis)

    def block(self, coords: Matrix, j: int, i: int) -> Matrix:
        """Block (j, i) of a matrix given in eigenbasis coordinates."""
        o = self.offsets
        return coords.submatrix(range(o[j], o[j + 1]), range(o[i], o[i + 1]))

    @cached_property
    def projectors(self) -> tuple:
        s, t = self.eigenbasis, self.eigenbasis_inverse
        o = self.offsets
        out = []
        for k in range(len(self.eigenspaces)):
            cols = range(o[k], o[k + 1])
            left = s.submatrix(range(s.nrows), cols)
            right = t.submatrix(cols, range(t.ncols))
            out.append(left @ right)
        return tuple(out)

    def with_values(self, values: Sequence) -> "EigenData":
        """Same eigenspaces with relabelled eigenvalues; cached bases carry over."""
        new = EigenData(tuple(values), self.eigenspaces, self.ctx)
        for name in ("offsets", "eigenbasis", "eigenbasis_inverse", "projectors"):
            if name in self.__dict__:
                new.__dict__[name] = self.__dict__[name]
        return new


@dataclass(frozen=True)
class ParameterArray:
    theta: tuple
    theta_star: tuple
    rho: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(self.theta))
        object.__setattr__(self, "theta_star", tuple(self.theta_star))
        object.__setattr__(self, "rho", tuple(self.rho))

    @property
    def diameter(self) -> int:
        return len(self.theta) - 1

    def to_dict(self, ctx: FieldContext) -> dict:
        return {
            "theta": [ctx.format(t) for t in self.theta],
            "theta_star": [ctx.format(t) for t in self.theta_star],
            "rho": list(self.rho),
        }


@dataclass(frozen=True, eq=False)
class BidiagonalPair:
    A: Matrix
    Astar: Matrix
    eig: EigenData
    eig_star: EigenData
    d: int

    @property
    def ctx(self) -> FieldContext:
        return self.A.ctx

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def theta(self) -> tuple:
        return self.eig.eigenvalues

    @property
    def theta_star(self) -> tuple:
        return self.eig_star.eigenvalues

    @cached_property
    def bracket(self) -> Matrix:
        """The commutator [A, A*]."""
        return self.A @ self.Astar - self.Astar @ self.A

    @cached_property
    def params(self) -> ParameterArray:
        return ParameterArray(self.theta, self.theta_star, self.eig.dims)

    def same_matrices(self, other: "BidiagonalPair") -> bool:
        return self.A == other.A and self.Astar == other.Astar


@dataclass(frozen=True)
class AffineWitness:
    """The map (A, A*) -> (p A + q_scale I, r A* + s I)."""

    p: object
    q_scale: object
    r: object
    s: object

    @classmethod
    def identity(cls, ctx: FieldContext) -> "AffineWitness":
        return cls(ctx.one, ctx.zero, ctx.one, ctx.zero)

    def inverse(self) -> "AffineWitness":
        if not self.p or not self.r:
            raise ZeroScale("p and r must be nonzero")
        return AffineWitness(1 / self.p, -self.q_scale / self.p, 1 / self.r, -self.s / self.r)

    def to_dict(self, ctx: FieldContext) -> dict:
        return {k: ctx.format(getattr(self, k)) for k in ("p", "q_scale", "r", "s")}


@dataclass(frozen=True)
class Finding:
    """One failed condition in a verification report."""

    clause: str
    operator: str
    index: Optional[int]
    message: str

    def to_dict(self) -> dict:
        return {"clause": self.clause, "operator": self.operator, "index": self.index, "message": self.message}


@dataclass
class VerificationReport:
    is_bidiagonal: bool
    failures: list
    ctx: FieldContext
    theta: Optional[tuple] = None
    theta_star: Optional[tuple] = None
    candidate_chains: dict = field(default_factory=dict)
    parameter_array: Optional[ParameterArray] = None
    pair: Optional[BidiagonalPair] = None

    def clauses(self) -> set:
        return {f.clause for f in self.failures}

    def to_dict(self) -> dict:
        fmt = self.ctx.format
        out = {
            "is_bidiagonal": self.is_bidiagonal,
            "failures": [f.to_dict() for f in self.failures],
            "ordering": {
                "theta": None if self.theta is None else [fmt(t) for t in self.theta],
                "theta_star": None if self.theta_star is None else [fmt(t) for t in self.theta_star],
            },
        }
        if self.candidate_chains:
            out["candidate_chains"] = {
                k: [[fmt(t) for t in chain] for chain in v] for k, v in self.candidate_chains.items()
            }
        out["parameter_array"] = None if self.parameter_array is None else self.parameter_array.to_dict(self.ctx)
        return out


# ---------------------------------------------------------------------------


def _block_nonzero(coords: Matrix, offsets, j: int, i: int) -> bool:
    rows = coords.rows
    for r in range(offsets[j], offsets[j + 1]):
        row = rows[r]
        for c in range(offsets[i], offsets[i + 1]):
            if row[c]:
                return True
    return False


def _standard_chain(decomp, other: Matrix, ctx: FieldContext):
    """Order the eigenspaces in ``decomp`` so that ``other`` raises by at most one.

    Returns (ordered decomposition or None, candidate chains). The off-diagonal
    nonzero blocks of ``other`` in the eigenbasis define a successor
    relation; a standard ordering exists and is unique exactly when that
    relation is a single path through every eigenspace.
    """
    k = len(decomp)
    if k == 1:
        return list(decomp), []
    data = EigenData(tuple(t for t, _ in decomp), tuple(s for _, s in decomp), ctx)
    coords = data.coordinates(other)
    offs = data.offsets
    succ = {a: [] for a in range(k)}
    pred = {a: [] for a in range(k)}
    for a in range(k):
        for b in range(k):
            if a != b and _block_nonzero(coords, offs, b, a):
                succ[a].append(b)
                pred[b].append(a)
    values = [t for t, _ in decomp]
    if any(len(v) > 1 for v in succ.values()) or any(len(v) > 1 for v in pred.values()):
        return None, []
    starts = [a for a in range(k) if not pred[a]]
    fragments = []
    seen = set()
    for a in starts:
        chain = [a]
        seen.add(a)
        while succ[chain[-1]]:
            nxt = succ[chain[-1]][0]
            chain.append(nxt)
            seen.add(nxt)
        fragments.append(chain)
    if len(seen) < k:
        return None, []  # a cycle: no ordering can raise by one step
    if len(fragments) == 1:
        return [decomp[a] for a in fragments[0]], [[values[a] for a in fragments[0]]]
    candidates = []
    if len(fragments) <= 4:
        for perm in permutations(fragments):
            candidates.append([values[a] for frag in perm for a in frag])
    else:
        candidates = [[values[a] for a in frag] for frag in fragments]
    return None, candidates


def _check_bijections(data: EigenData, bracket: Matrix, name: str, failures: list):
    d = data.diameter
    spaces = data.eigenspaces
    for i in range(d // 2 + 1):
        src, dst = spaces[i], spaces[d - i]
        vecs = list(src.vectors)
        for _ in range(d - 2 * i):
            vecs = [bracket.apply(v) for v in vecs]
        if not all(dst.contains(v) for v in vecs):
            failures.append(Finding("def.iii", name, i, f"[A,A*]^{d - 2 * i} does not map eigenspace {i} into eigenspace {d - i}"))
            continue
        rank = Subspace(vecs, src.ambient_dim, data.ctx).dim if vecs else 0
        if not (rank == src.dim == dst.dim):
            failures.append(Finding("def.iii", name, i, f"[A,A*]^{d - 2 * i} from eigenspace {i} onto eigenspace {d - i} is not a bijection"))


def verify(A: Matrix, Astar: Matrix, hints: Optional[tuple] = None) -> VerificationReport:
    """Check whether (A, A*) is a bidiagonal pair.

    ``hints`` is an optional pair (theta candidates, theta_star candidates)
    used to skip eigenvalue discovery. Raises Unsupported when eigenvalues
    fall outside the working field; every other problem becomes a report
    finding.
    """
    if A.ctx != Astar.ctx:
        raise MixedFieldContexts(f"{A.ctx} vs {Astar.ctx}")
    if not A.is_square() or not Astar.is_square() or A.nrows != Astar.nrows:
        raise NotSquare("A and A* must be square of equal size")
    if A.nrows == 0:
        raise ValueError("the underlying space must have positive dimension")
    ctx = A.ctx
    hint_a, hint_s = (hints or (None, None))
    failures: list = []
    report = VerificationReport(False, failures, ctx)

    decomp = {}
    for name, m, h in (("A", A, hint_a), ("Astar", Astar, hint_s)):
        try:
            decomp[name] = eigendecompose(m, h)
        except NotDiagonalizable:
            decomp[name] = None
            failures.append(Finding("def.i", name, None, f"{name} is not diagonalizable over {ctx}"))

    ordered = {}
    for name, other in (("A", Astar), ("Astar", A)):
        if decomp[name] is None:
            continue
        chain, candidates = _standard_chain(decomp[name], other, ctx)
        key = "theta" if name == "A" else "theta_star"
        if chain is None:
            report.candidate_chains[key] = candidates
            if candidates:
                msg = f"standard ordering of the eigenspaces of {name} is not unique ({len(candidates)} candidates)"
            else:
                msg = f"no ordering of the eigenspaces of {name} is raised by one step"
            failures.append(Finding("def.ii", name, None, msg))
        else:
            ordered[name] = chain
            values = tuple(t for t, _ in chain)
            if name == "A":
                report.theta = values
            else:
                report.theta_star = values

    if len(ordered) < 2:
        return report

    eig = EigenData(tuple(t for t, _ in ordered["A"]), tuple(s for _, s in ordered["A"]), ctx)
    eig_star = EigenData(tuple(t for t, _ in ordered["Astar"]), tuple(s for _, s in ordered["Astar"]), ctx)
    d, delta = eig.diameter, eig_star.diameter
    if d != delta:
        failures.append(Finding("def.iii", "both", None, f"diameters differ: {d} for A and {delta} for A*"))
    bracket = A @ Astar - Astar @ A
    _check_bijections(eig_star, bracket, "Astar", failures)
    _check_bijections(eig, bracket, "A", failures)
    if failures:
        return report

    # a genuine pair has matching shapes; anything else is a contradiction
    for i in range(d + 1):
        if not (eig.dims[i] == eig_star.dims[i] == eig.dims[d - i]):
            raise InvariantViolation(f"eigenspace dimensions disagree at index {i}")
    pair = BidiagonalPair(A, Astar, eig, eig_star, d)
    pair.__dict__["bracket"] = bracket
    report.is_bidiagonal = True
    report.pair = pair
    report.parameter_array = pair.params
    return report


def parameter_array(pair: BidiagonalPair) -> ParameterArray:
    return pair.params


def dual(pair: BidiagonalPair) -> BidiagonalPair:
    """The pair (A*, A)."""
    return BidiagonalPair(pair.Astar, pair.A, pair.eig_star, pair.eig, pair.d)


def affine(pair: BidiagonalPair, w: AffineWitness) -> BidiagonalPair:
    """The pair (pA + qI, rA* + sI); eigenspaces are unchanged."""
    ctx = pair.ctx
    p, q, r, s = (ctx(x) for x in (w.p, w.q_scale, w.r, w.s))
    if not p or not r:
        raise ZeroScale("affine scale factors must be nonzero")
    A = (pair.A * p).shift(q)
    As = (pair.Astar * r).shift(s)
    eig = pair.eig.with_values([p * t + q for t in pair.theta])
    eig_star = pair.eig_star.with_values([r * t + s for t in pair.theta_star])
    return BidiagonalPair(A, As, eig, eig_star, pair.d)
