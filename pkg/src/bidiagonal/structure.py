"""Highest spaces, the split decomposition, the third operator and isomorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import BidiagonalPair
from .errors import InvariantViolation, NotReduced
from .linalg import Matrix, Subspace, _rref_rows, sum_of
from .relations import reduced_variant

__all__ = [
    "SubspaceChain",
    "highest_spaces",
    "split_subspaces",
    "third_operator",
    "third_operator_solution_dimension",
    "isomorphism",
    "ladder_basis",
]

SPLIT_W = "SPLIT_W"
HIGHEST_H = "HIGHEST_H"
HIGHEST_H_STAR = "HIGHEST_H_STAR"


@dataclass(frozen=True)
class SubspaceChain:
    label: str
    spaces: tuple

    @property
    def dims(self) -> tuple:
        return tuple(s.dim for s in self.spaces)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "dims": list(self.dims),
            "bases": [s.basis.to_strings() if s.dim else [] for s in self.spaces],
        }


def _power_images(m: Matrix, vectors, k: int):
    for _ in range(k):
        vectors = [m.apply(v) for v in vectors]
    return vectors


def _kernel_combinations(space: Subspace, images):
    """Vectors of ``space`` whose images (listed per basis vector) vanish."""
    n = space.ambient_dim
    k = space.dim
    ctx = space.ctx
    if k == 0:
        return Subspace.zero(n, ctx)
    # rows of the transpose: the coefficient matrix is n x k with columns = images
    rows = [[images[c][r] for c in range(k)] for r in range(n)]
    rows, pivots = _rref_rows(rows, k)
    from .linalg import _kernel_from_rref

    coeffs = _kernel_from_rref(rows, pivots, k, ctx.zero, ctx.one)
    vecs = []
    for c in coeffs:
        v = [ctx.zero] * n
        for coef, b in zip(c, space.vectors):
            if coef:
                for j in range(n):
                    if b[j]:
                        v[j] += coef * b[j]
        vecs.append(v)
    return Subspace(vecs, n, ctx) if vecs else Subspace.zero(n, ctx)


def _highest(eig, bracket: Matrix, d: int, label: str) -> SubspaceChain:
    spaces = []
    for i in range(d // 2 + 1):
        vi = eig.eigenspaces[i]
        images = _power_images(bracket, list(vi.vectors), d - 2 * i + 1)
        spaces.append(_kernel_combinations(vi, images))
    chain = SubspaceChain(label, tuple(spaces))
    dims = eig.dims
    for i, h in enumerate(spaces):
        expected = dims[i] - (dims[i - 1] if i else 0)
        if h.dim != expected:
            raise InvariantViolation(f"{label}: dim H_{i} = {h.dim}, expected {expected}")
    n = eig.ambient_dim
    for i in range(d + 1):
        parts = []
        for j in range(min(i, d - i) + 1):
            parts.append(Subspace(_power_images(bracket, list(spaces[j].vectors), i - j), n, eig.ctx))
        total = sum_of(parts, n, eig.ctx)
        if sum(p.dim for p in parts) != dims[i] or total != eig.eigenspaces[i]:
            raise InvariantViolation(f"{label}: eigenspace {i} is not the direct sum of raised highest spaces")
    return chain


def highest_spaces(pair: BidiagonalPair):
    """(H chain, H* chain): vectors of V_i (resp. V*_i) killed by [A,A*]^(d-2i+1).

    The dimension count and the refinement of each eigenspace into raised
    highest spaces are asserted.
    """
    h = _highest(pair.eig, pair.bracket, pair.d, HIGHEST_H)
    hs = _highest(pair.eig_star, pair.bracket, pair.d, HIGHEST_H_STAR)
    return h, hs


def split_subspaces(pair: BidiagonalPair) -> SubspaceChain:
    """W_i = (V*_0 + ... + V*_i) intersected with (V_0 + ... + V_(d-i))."""
    d, n, ctx = pair.d, pair.n, pair.ctx
    vs, vstar = pair.eig.eigenspaces, pair.eig_star.eigenspaces
    prefix_star, acc = [], Subspace.zero(n, ctx)
    for s in vstar:
        acc = acc + s
        prefix_star.append(acc)
    prefix, acc = [], Subspace.zero(n, ctx)
    for s in vs:
        acc = acc + s
        prefix.append(acc)
    spaces = tuple(prefix_star[i].intersect(prefix[d - i]) for i in range(d + 1))
    chain = SubspaceChain(SPLIT_W, spaces)
    for i, w in enumerate(spaces):
        if w.dim != vstar[i].dim:
            raise InvariantViolation(f"dim W_{i} = {w.dim}, expected {vstar[i].dim}")
    if sum(w.dim for w in spaces) != n or sum_of(spaces, n, ctx).dim != n:
        raise InvariantViolation("split spaces do not decompose the space")
    acc = Subspace.zero(n, ctx)
    for i, w in enumerate(spaces):
        acc = acc + w
        if acc != prefix_star[i]:
            raise InvariantViolation(f"W_0 + ... + W_{i} differs from V*_0 + ... + V*_{i}")
    return chain


def _operator_from_spaces(spaces, values, n, ctx) -> Matrix:
    cols, diag = [], []
    for w, lam in zip(spaces, values):
        cols.extend(w.vectors)
        diag.extend([lam] * w.dim)
    s = Matrix.from_columns(cols, ctx, n)
    return s @ Matrix.diagonal(diag, ctx) @ s.inverse()


def _chain_inclusion(m: Matrix, spaces, lo: int, hi: int) -> bool:
    """m S_i lies in S_(i+lo) + ... + S_(i+hi) for every i."""
    k = len(spaces)
    n = spaces[0].ambient_dim
    ctx = spaces[0].ctx
    for i, s in enumerate(spaces):
        target = sum_of([spaces[j] for j in range(max(0, i + lo), min(k, i + hi + 1))], n, ctx)
        if not all(target.contains(m.apply(v)) for v in s.vectors):
            return False
    return True


def third_operator(pair: BidiagonalPair, q=None) -> Matrix:
    """The operator B (base 1) or B' (otherwise) of a reduced pair.

    It acts on W_i as 2i - d (resp. q^(d-2i)). The equitable relations and
    the four bidiagonality inclusions are asserted.
    """
    form = reduced_variant(pair, q)
    if form is None:
        raise NotReduced("the third operator needs a reduced pair")
    d, n, ctx = pair.d, pair.n, pair.ctx
    w = split_subspaces(pair).spaces
    if form.variant == "sl2":
        values = [ctx(2 * i - d) for i in range(d + 1)]
    else:
        values = [form.q ** (d - 2 * i) for i in range(d + 1)]
    B = _operator_from_spaces(w, values, n, ctx)
    failed = equitable_failures(form, B, pair.A, pair.Astar)
    if failed:
        raise InvariantViolation(f"equitable relations fail: {', '.join(failed)}")
    v, vs = pair.eig.eigenspaces, pair.eig_star.eigenspaces
    checks = {
        "A W_i in W_i + W_(i+1)": _chain_inclusion(pair.A, w, 0, 1),
        "B V_i in V_(i-1) + V_i": _chain_inclusion(B, v, -1, 0),
        "A* W_i in W_(i-1) + W_i": _chain_inclusion(pair.Astar, w, -1, 0),
        "B V*_i in V*_(i-1) + V*_i": _chain_inclusion(B, vs, -1, 0),
    }
    bad = [k for k, ok in checks.items() if not ok]
    if bad:
        raise InvariantViolation(f"bidiagonality inclusions fail: {', '.join(bad)}")
    return B


def equitable_failures(form, x: Matrix, y: Matrix, z: Matrix) -> list:
    """Names of the equitable relations violated by the triple (x, y, z)."""
    ctx = x.ctx
    n = x.nrows
    failed = []
    pairs = (("xy", x, y), ("yz", y, z), ("zx", z, x))
    if form.variant == "sl2":
        for name, a, b in pairs:
            if not (a @ b - b @ a - a * 2 - b * 2).is_zero():
                failed.append(f"[{name[0]},{name[1]}]")
    else:
        q = form.q
        scale = q - 1 / q
        ident = Matrix.identity(n, ctx)
        for name, a, b in pairs:
            if (a @ b) * q - (b @ a) * (1 / q) != ident * scale:
                failed.append(f"q{name}")
    return failed


def third_operator_solution_dimension(pair: BidiagonalPair, q=None) -> int:
    """Dimension of the homogeneous solutions of the system defining the third operator.

    For a base-1 pair the system is [M,A] = 2M + 2A, [A*,M] = 2A* + 2M; for the
    q pattern it is q M A - q^-1 A M = (q - q^-1) I and q A* M - q^-1 M A* =
    (q - q^-1) I. A result of 0 means the solution, if any, is unique.
    The unknown is conjugated into the eigenbasis of A, where the first
    equation is diagonal, so only entries (a, b) with a matching pair of
    eigenvalues survive; the second equation is then solved on those.
    """
    form = reduced_variant(pair, q)
    if form is None:
        raise NotReduced("the third-operator system is defined for reduced pairs")
    ctx = pair.ctx
    eig = pair.eig
    n = pair.n
    lam = []
    for t, s in zip(eig.eigenvalues, eig.eigenspaces):
        lam.extend([t] * s.dim)
    if form.variant == "sl2":
        left, right, diag = ctx.one, ctx.one, ctx(2)
        unknowns = [(a, b) for a in range(n) for b in range(n) if lam[b] - lam[a] - 2 == 0]
    else:
        left, right, diag = form.q, 1 / form.q, ctx.zero
        unknowns = [(a, b) for a in range(n) for b in range(n) if lam[b] * left - lam[a] * right == 0]
    if not unknowns:
        return 0
    c = eig.coordinates(pair.Astar).rows
    # image of E_ab under M -> left C M - right M C - diag M, flattened row-major
    columns = []
    for a, b in unknowns:
        vec = {}
        for r in range(n):
            if c[r][a]:
                vec[r * n + b] = vec.get(r * n + b, ctx.zero) + left * c[r][a]
        for col in range(n):
            if c[b][col]:
                vec[a * n + col] = vec.get(a * n + col, ctx.zero) - right * c[b][col]
        if diag:
            vec[a * n + b] = vec.get(a * n + b, ctx.zero) - diag
        columns.append(vec)
    # rank of the n^2 x k system = rank of its transpose (k rows)
    support = sorted({key for v in columns for key in v})
    index = {key: i for i, key in enumerate(support)}
    rows = []
    for v in columns:
        row = [ctx.zero] * len(support)
        for key, val in v.items():
            row[index[key]] = val
        rows.append(row)
    _, pivots = _rref_rows(rows, len(support))
    return len(unknowns) - len(pivots)


# -- isomorphism ---------------------------------------------------------------


def ladder_basis(pair: BidiagonalPair) -> Matrix:
    """Columns v_(i,j,k) = [A,A*]^k v_(i,j) with v_(i,j) the echelon basis of H_i.

    Ordered by i, then j, then k.
    """
    h, _ = highest_spaces(pair)
    d = pair.d
    cols = []
    for i, hi in enumerate(h.spaces):
        for v in hi.vectors:
            w = v
            for k in range(d - 2 * i + 1):
                cols.append(w)
                w = pair.bracket.apply(w)
    return Matrix.from_columns(cols, pair.ctx, pair.n)


def isomorphism(P: BidiagonalPair, Q: BidiagonalPair) -> Optional[Matrix]:
    """An invertible mu with mu A = B mu and mu A* = B* mu, or None.

    None is returned exactly when the parameter arrays differ.
    """
    if P.ctx != Q.ctx:
        from .errors import MixedFieldContexts

        raise MixedFieldContexts(f"{P.ctx} vs {Q.ctx}")
    if P.params != Q.params:
        return None
    tp, tq = ladder_basis(P), ladder_basis(Q)
    mu = tq @ tp.inverse()
    if mu @ P.A != Q.A @ mu or mu @ P.Astar != Q.Astar @ mu:
        raise InvariantViolation("constructed map does not intertwine the pairs")
    if not mu.is_invertible():
        raise InvariantViolation("constructed map is singular")
    return mu
