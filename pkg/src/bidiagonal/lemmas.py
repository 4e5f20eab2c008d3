"""Structural identities every bidiagonal pair satisfies, as exact checks.

Each ``check_*`` function returns a list of failure messages; an empty list
means the identity holds. :func:`lemma_report` runs all of them. Block
statements about projectors are evaluated in eigenbasis coordinates, where
E_j M E_i is nonzero exactly when block (j, i) of S^-1 M S is nonzero.
"""

from __future__ import annotations

from .core import BidiagonalPair, EigenData
from .errors import InvariantViolation
from .linalg import Matrix, Subspace, _rref_rows
from .structure import highest_spaces

__all__ = [
    "check_raising",
    "check_injection_surjection",
    "check_telescoping",
    "check_bracket_powers",
    "check_block_structure",
    "check_refinement",
    "check_power_independence",
    "lemma_report",
]


def _sides(pair: BidiagonalPair):
    """(label, eigen data, operator acting on it, its eigenvalues, the other sequence)."""
    return (
        ("V*", pair.eig_star, pair.A, pair.theta, pair.theta_star, 1),
        ("V", pair.eig, pair.Astar, pair.theta_star, pair.theta, -1),
    )


def _images(m: Matrix, vectors, times: int = 1):
    for _ in range(times):
        vectors = [m.apply(v) for v in vectors]
    return vectors


def _span_dim(vectors, n, ctx) -> int:
    return Subspace(vectors, n, ctx).dim if vectors else 0


def check_raising(pair: BidiagonalPair) -> list:
    """[A,A*] and A - theta_i I map V*_i into V*_(i+1); dually on V_i."""
    out = []
    n, ctx, d = pair.n, pair.ctx, pair.d
    for label, eig, op, values, _, _ in _sides(pair):
        spaces = eig.eigenspaces
        for i in range(d + 1):
            target = spaces[i + 1] if i < d else Subspace.zero(n, ctx)
            vecs = list(spaces[i].vectors)
            if not all(target.contains(v) for v in _images(pair.bracket, vecs)):
                out.append(f"[A,A*] {label}_{i} not inside {label}_{i + 1}")
            shifted = op.shift(-values[i])
            if not all(target.contains(v) for v in _images(shifted, vecs)):
                out.append(f"shifted operator on {label}_{i} not inside {label}_{i + 1}")
    return out


def check_injection_surjection(pair: BidiagonalPair) -> list:
    """Powers of [A,A*] inject low eigenspaces forward and surject high ones."""
    out = []
    n, ctx, d = pair.n, pair.ctx, pair.d
    for label, eig, *_ in _sides(pair):
        spaces = eig.eigenspaces
        for i in range(d + 1):
            low = 2 * i < d
            top = d - 2 * i if low else d - i
            vecs = list(spaces[i].vectors)
            for j in range(top + 1):
                if j:
                    vecs = _images(pair.bracket, vecs)
                target = spaces[i + j]
                if not all(target.contains(v) for v in vecs):
                    out.append(f"[A,A*]^{j} {label}_{i} leaves {label}_{i + j}")
                    continue
                rank = _span_dim(vecs, n, ctx)
                want = spaces[i].dim if low else target.dim
                if rank != want:
                    kind = "injective" if low else "surjective"
                    out.append(f"[A,A*]^{j} on {label}_{i} is not {kind}")
    return out


def check_telescoping(pair: BidiagonalPair) -> list:
    """V_i + ... + V_d equals V*_i + ... + V*_d for every i."""
    out = []
    n, ctx, d = pair.n, pair.ctx, pair.d
    tail, tail_star = Subspace.zero(n, ctx), Subspace.zero(n, ctx)
    for i in range(d, -1, -1):
        tail = tail + pair.eig.eigenspaces[i]
        tail_star = tail_star + pair.eig_star.eigenspaces[i]
        if tail != tail_star:
            out.append(f"tail sums differ from index {i}")
    return out


def check_bracket_powers(pair: BidiagonalPair) -> list:
    """[A,A*]^k on V*_i equals the product of (th*_s - th*_(s+1))(A - th_s I); dually on V_i."""
    out = []
    d = pair.d
    for label, eig, op, values, other, sign in _sides(pair):
        for i in range(d + 1):
            basis = list(eig.eigenspaces[i].vectors)
            lhs = basis
            rhs = basis
            for k in range(1, d - i + 2):
                s = i + k - 1
                lhs = _images(pair.bracket, lhs)
                shifted = op.shift(-values[s])
                if s < d:
                    gap = (other[s] - other[s + 1]) * sign
                    rhs = [[gap * x for x in v] for v in _images(shifted, rhs)]
                else:
                    rhs = _images(shifted, rhs)  # vanishes on the last eigenspace
                if [list(v) for v in lhs] != [list(v) for v in rhs]:
                    out.append(f"bracket power {k} on {label}_{i} differs from the product form")
    return out


def _block_nonzero(coords: Matrix, eig: EigenData, j: int, i: int) -> bool:
    return not eig.block(coords, j, i).is_zero()


def check_block_structure(pair: BidiagonalPair) -> list:
    """E*_j A E*_i and E_j A*^r E_i vanish or not as the raising pattern dictates."""
    out = []
    d = pair.d
    for label, eig, op, values, _, _ in _sides(pair):
        coords = eig.coordinates(op)
        for i in range(d + 1):
            for j in range(d + 1):
                blk = eig.block(coords, j, i)
                if j == i:
                    ident = Matrix.identity(blk.nrows, pair.ctx) * values[i]
                    if blk != ident:
                        out.append(f"diagonal block ({j},{i}) on {label} is not a scalar")
                elif j - i == 1:
                    if blk.is_zero():
                        out.append(f"block ({j},{i}) on {label} vanishes")
                elif not blk.is_zero():
                    out.append(f"block ({j},{i}) on {label} should vanish")
        power = Matrix.identity(pair.n, pair.ctx)
        for r in range(d + 1):
            for i in range(d + 1):
                for j in range(i + r, d + 1):
                    nonzero = _block_nonzero(power, eig, j, i)
                    if j - i > r and nonzero:
                        out.append(f"power {r} block ({j},{i}) on {label} should vanish")
                    if j - i == r and not nonzero:
                        out.append(f"power {r} block ({j},{i}) on {label} vanishes")
            power = power @ coords
    return out


def check_refinement(pair: BidiagonalPair) -> list:
    """Each eigenspace is the direct sum of raised highest spaces."""
    try:
        highest_spaces(pair)
    except InvariantViolation as exc:
        return [str(exc)]
    return []


def check_power_independence(pair: BidiagonalPair) -> list:
    """I, M, ..., M^d are linearly independent for M = A and M = A*."""
    out = []
    d, n, ctx = pair.d, pair.n, pair.ctx
    for label, m in (("A", pair.A), ("A*", pair.Astar)):
        rows, power = [], Matrix.identity(n, ctx)
        for _ in range(d + 1):
            rows.append([x for row in power.rows for x in row])
            power = power @ m
        _, pivots = _rref_rows(rows, n * n)
        if len(pivots) != d + 1:
            out.append(f"powers of {label} up to {d} are dependent")
    return out


CHECKS = {
    "raising": check_raising,
    "injection_surjection": check_injection_surjection,
    "telescoping": check_telescoping,
    "bracket_powers": check_bracket_powers,
    "block_structure": check_block_structure,
    "refinement": check_refinement,
    "power_independence": check_power_independence,
}


def lemma_report(pair: BidiagonalPair) -> dict:
    """Failure messages of every check, keyed by check name."""
    return {name: fn(pair) for name, fn in CHECKS.items()}
