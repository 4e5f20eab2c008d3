"""Exact dense linear algebra over a :class:`~bidiagonal.field.FieldContext`.

Matrices are immutable row tuples. Elimination loops skip zero entries,
which matters because most matrices built by this package are very sparse.
Subspaces are stored by the reduced row echelon form of their basis rows;
the transpose of that is the reduced column echelon basis, so two equal
subspaces always have identical representations.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from flint import fmpq_poly, fmpz, fmpz_mpoly_ctx

from .errors import (
    AmbientMismatch,
    DivisionByZero,
    DuplicateEigenvalues,
    DuplicateNodes,
    MixedFieldContexts,
    NotDiagonalizable,
    NotSquare,
    Unsupported,
)
from .field import RATIONALS, FieldContext, RationalFunction, _to_fmpq, _to_mpq, poly_gcd
from .polynomial import Poly

__all__ = [
    "Matrix",
    "Subspace",
    "rref_rank_kernel",
    "solve",
    "subspace_ops",
    "char_min_poly",
    "characteristic_polynomial",
    "minimal_polynomial",
    "linear_roots",
    "eigendecompose",
    "lagrange_projector",
    "vandermonde_interpolate",
    "commutator",
    "block_diagonal",
]


# ---------------------------------------------------------------------------
# row-level kernels


def _row_polynomials(row) -> list:
    """Numerators of ``row`` over a common denominator (which is dropped)."""
    dens = [x.den for x in row if x and x.den.degree() > 0]
    if not dens:
        return [x.num for x in row]
    if all(_is_q_power(d) for d in dens):
        lcm = max(dens, key=lambda d: d.degree())
    else:
        lcm = dens[0]
        for d in dens[1:]:
            if lcm % d:
                lcm = lcm * (d // poly_gcd(lcm, d))
    return [x.num * (lcm // x.den) if x else x.num for x in row]


def _is_q_power(p: fmpq_poly) -> bool:
    # denominators are monic, so q^k is the only shape with no lower terms
    return not any(p.coeffs()[:-1])


def _rref_rows_fraction_free(rows: list[list], ncols: int):
    """Reduced row echelon form over Q(q) by fraction-free Gauss-Jordan.

    Rows are scaled to polynomial rows, then every update
    ``(p * row_i - row_i[c] * row_r) / previous_p`` divides exactly, so no
    gcd is needed until the final division by the last pivot.
    """
    polys = [_row_polynomials(r) for r in rows]
    nrows = len(polys)
    pivots = []
    prev = fmpq_poly([1])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if polys[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            polys[r], polys[piv] = polys[piv], polys[r]
        prow = polys[r]
        p = prow[c]
        unit = prev.degree() == 0 and prev[0] == 1
        for i in range(nrows):
            if i == r:
                continue
            ri = polys[i]
            f = ri[c]
            for j in range(ncols):
                if j == c:
                    continue
                x = ri[j] * p
                if f and prow[j]:
                    x -= f * prow[j]
                ri[j] = x if unit else _exact_div(x, prev)
            ri[c] = f * 0
        pivots.append(c)
        prev = p
        r += 1
    out = []
    for k, c in enumerate(pivots):
        piv = polys[k][c]
        out.append([RationalFunction(x, piv) if x else RationalFunction._raw(x, _ONE) for x in polys[k]])
    for k in range(len(pivots), nrows):
        out.append([RationalFunction._raw(x * 0, _ONE) for x in polys[k]])
    return out, pivots


_ONE = fmpq_poly([1])


def _exact_div(x: fmpq_poly, d: fmpq_poly) -> fmpq_poly:
    if not x:
        return x
    quo, rem = divmod(x, d)
    if rem:
        raise ArithmeticError("fraction-free elimination produced an inexact division")
    return quo


def _rref_rows(rows: list[list], ncols: int):
    """Reduced row echelon form (may reuse ``rows``). Returns (rows, pivot columns)."""
    if rows and ncols and isinstance(rows[0][0], RationalFunction) and len(rows) > 2:
        return _rref_rows_fraction_free(rows, ncols)
    return _rref_rows_direct(rows, ncols)


def _rref_rows_direct(rows: list[list], ncols: int):
    """In-place elimination with field division at every pivot."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = 1 / lead
            prow = [x * inv if x else x for x in prow]
            rows[r] = prow
        nz = [j for j in range(c + 1, ncols) if prow[j]]
        zero = prow[c] - prow[c]
        for i in range(nrows):
            if i == r:
                continue
            ri = rows[i]
            f = ri[c]
            if f:
                for j in nz:
                    ri[j] -= f * prow[j]
                ri[c] = zero
        pivots.append(c)
        r += 1
    return rows, pivots


def _kernel_from_rref(rows, pivots, ncols, zero, one):
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for k, p in enumerate(pivots):
            c = rows[k][f]
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def _echelon(vectors: list[list], ncols: int):
    rows, pivots = _rref_rows([list(v) for v in vectors], ncols)
    return tuple(tuple(r) for r in rows[: len(pivots)]), tuple(pivots)


def _lazy_sum(terms) -> RationalFunction:
    """Sum of (num, den) pairs over Q(q) with a single final cancellation."""
    lcm = _ONE
    for _, d in terms:
        if d.degree() > 0 and lcm % d:
            if _is_q_power(d) and _is_q_power(lcm):
                lcm = d
            else:
                lcm = lcm * (d // poly_gcd(lcm, d))
    num = fmpq_poly()
    for n, d in terms:
        num += n * (lcm // d) if d.degree() > 0 else n * lcm
    return RationalFunction(num, lcm)


def _matmul_rows_q(a_rows, b_rows, ncols, zero):
    bnz = [[(j, v) for j, v in enumerate(r) if v] for r in b_rows]
    out = []
    for row in a_rows:
        acc = [[] for _ in range(ncols)]
        for k, a in enumerate(row):
            if a:
                for j, v in bnz[k]:
                    acc[j].append((a.num * v.num, a.den * v.den))
        out.append(tuple(_lazy_sum(t) if t else zero for t in acc))
    return tuple(out)


def _matmul_rows(a_rows, b_rows, ncols, zero):
    if isinstance(zero, RationalFunction):
        return _matmul_rows_q(a_rows, b_rows, ncols, zero)
    bnz = [[(j, v) for j, v in enumerate(r) if v] for r in b_rows]
    out = []
    for row in a_rows:
        acc = [zero] * ncols
        for k, a in enumerate(row):
            if a:
                for j, v in bnz[k]:
                    acc[j] += a * v
        out.append(tuple(acc))
    return tuple(out)


# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over a field context.

    ``@`` is matrix multiplication; ``*`` with a scalar scales.
    Zero-size matrices are allowed (a subspace of dimension zero has an
    n x 0 basis matrix).
    """

    __slots__ = ("_rows", "nrows", "ncols", "ctx", "_hash")

    def __init__(self, rows: Iterable[Iterable], ctx: FieldContext, ncols: int | None = None):
        data = tuple(tuple(ctx(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged matrix rows")
        self._rows = data
        self.nrows = len(data)
        self.ncols = ncols
        self.ctx = ctx
        self._hash = None

    @classmethod
    def _raw(cls, rows, ctx, ncols=None):
        obj = object.__new__(cls)
        obj._rows = rows if isinstance(rows, tuple) else tuple(tuple(r) for r in rows)
        obj.nrows = len(obj._rows)
        obj.ncols = (len(obj._rows[0]) if obj._rows else 0) if ncols is None else ncols
        obj.ctx = ctx
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int, ctx: FieldContext) -> "Matrix":
        z = ctx.zero
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), ctx, ncols)

    @classmethod
    def identity(cls, n: int, ctx: FieldContext) -> "Matrix":
        z, o = ctx.zero, ctx.one
        return cls._raw(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), ctx, n)

    @classmethod
    def diagonal(cls, values: Sequence, ctx: FieldContext) -> "Matrix":
        vals = [ctx(v) for v in values]
        n = len(vals)
        z = ctx.zero
        return cls._raw(tuple(tuple(vals[i] if i == j else z for j in range(n)) for i in range(n)), ctx, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], ctx: FieldContext, nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), ctx, len(cols))

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int):
        return self._rows[i]

    def column(self, j: int):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def entries(self) -> list:
        return [x for r in self._rows for x in r]

    @property
    def T(self) -> "Matrix":
        rows = tuple(zip(*self._rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(rows, self.ctx, self.nrows)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def is_zero(self) -> bool:
        return not any(x for r in self._rows for x in r)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.ctx != other.ctx:
            raise MixedFieldContexts(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ctx,
            self.ncols,
        )

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows)),
            self.ctx,
            self.ncols,
        )

    def __neg__(self):
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._rows), self.ctx, self.ncols)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = self.ctx(c)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols, self.ctx)
        if c == 1:
            return self
        return Matrix._raw(tuple(tuple(a * c if a else a for a in r) for r in self._rows), self.ctx, self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix._raw(_matmul_rows(self._rows, other._rows, other.ncols, self.ctx.zero), self.ctx, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times a column vector given as a sequence."""
        zero = self.ctx.zero
        out = []
        for r in self._rows:
            acc = zero
            for a, b in zip(r, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def shift(self, c) -> "Matrix":
        """self + c*I."""
        c = self.ctx(c)
        if not c:
            return self
        return Matrix._raw(
            tuple(tuple(x + c if i == j else x for j, x in enumerate(r)) for i, r in enumerate(self._rows)),
            self.ctx,
            self.ncols,
        )

    def __pow__(self, k: int):
        if not self.is_square():
            raise NotSquare("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.nrows, self.ctx)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def trace(self):
        return sum((self._rows[i][i] for i in range(self.nrows)), self.ctx.zero)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ctx == other.ctx and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    # -- elimination --------------------------------------------------------

    def rref(self):
        rows, pivots = _rref_rows([list(r) for r in self._rows], self.ncols)
        return Matrix._raw(tuple(tuple(r) for r in rows), self.ctx, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(_rref_rows([list(r) for r in self._rows], self.ncols)[1])

    def kernel(self) -> "Subspace":
        rows, pivots = _rref_rows([list(r) for r in self._rows], self.ncols)
        basis = _kernel_from_rref(rows, pivots, self.ncols, self.ctx.zero, self.ctx.one)
        return Subspace(basis, self.ncols, self.ctx)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise NotSquare("inverse of a non-square matrix")
        n = self.nrows
        z, o = self.ctx.zero, self.ctx.one
        aug = [list(r) + [o if i == j else z for j in range(n)] for i, r in enumerate(self._rows)]
        rows, pivots = _rref_rows(aug, 2 * n)
        if len(pivots) < n or pivots[n - 1] != n - 1:
            raise DivisionByZero("matrix is singular")
        return Matrix._raw(tuple(tuple(r[n:]) for r in rows), self.ctx, n)

    # -- assembly -----------------------------------------------------------

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(tuple(r + s for r, s in zip(self._rows, other._rows)), self.ctx, self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(self._rows + other._rows, self.ctx, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._rows[i][j] for j in cols) for i in rows), self.ctx, len(cols))

    def to_strings(self) -> list[list[str]]:
        fmt = self.ctx.format
        return [[fmt(x) for x in r] for r in self._rows]

    def pretty(self) -> str:
        """Rows on separate lines with right-aligned columns."""
        cells = self.to_strings()
        if not cells or not self.ncols:
            return f"[{self.nrows}x{self.ncols}]"
        widths = [max(len(r[j]) for r in cells) for j in range(self.ncols)]
        return "\n".join("[ " + "  ".join(x.rjust(w) for x, w in zip(r, widths)) + " ]" for r in cells)

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"Matrix[{self.nrows}x{self.ncols} over {self.ctx}]({body})"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    """[a, b] = ab - ba."""
    return a @ b - b @ a


def block_diagonal(blocks: Sequence[Matrix], ctx: FieldContext) -> Matrix:
    n = sum(b.nrows for b in blocks)
    m = sum(b.ncols for b in blocks)
    z = ctx.zero
    rows = []
    off = 0
    for b in blocks:
        for r in b.rows:
            rows.append((z,) * off + tuple(r) + (z,) * (m - off - b.ncols))
        off += b.ncols
    return Matrix._raw(tuple(rows), ctx, m) if n else Matrix.zeros(0, 0, ctx)


# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of K^n held by the reduced echelon form of its basis.

    ``vectors`` are the echelon rows; ``basis`` is the same data as an
    n x k matrix in reduced column echelon form. Because the form is
    canonical, ``==`` compares subspaces.
    """

    __slots__ = ("vectors", "pivots", "ambient_dim", "ctx")

    def __init__(self, vectors: Iterable[Sequence], ambient_dim: int, ctx: FieldContext):
        vs = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vs):
            raise AmbientMismatch("vector length differs from the ambient dimension")
        self.vectors, self.pivots = _echelon(vs, ambient_dim) if vs else ((), ())
        self.ambient_dim = ambient_dim
        self.ctx = ctx

    @classmethod
    def _canonical(cls, vectors, pivots, ambient_dim, ctx):
        obj = object.__new__(cls)
        obj.vectors = vectors
        obj.pivots = pivots
        obj.ambient_dim = ambient_dim
        obj.ctx = ctx
        return obj

    @classmethod
    def zero(cls, n: int, ctx: FieldContext) -> "Subspace":
        return cls._canonical((), (), n, ctx)

    @classmethod
    def full(cls, n: int, ctx: FieldContext) -> "Subspace":
        z, o = ctx.zero, ctx.one
        vecs = tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))
        return cls._canonical(vecs, tuple(range(n)), n, ctx)

    @classmethod
    def column_span(cls, m: Matrix) -> "Subspace":
        return cls(m.columns(), m.nrows, m.ctx)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def basis(self) -> Matrix:
        return Matrix.from_columns(self.vectors, self.ctx, self.ambient_dim)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise AmbientMismatch(f"ambient dims {self.ambient_dim} and {other.ambient_dim}")
        if self.ctx != other.ctx:
            raise MixedFieldContexts(f"{self.ctx} vs {other.ctx}")

    def residual(self, v: Sequence) -> list:
        """v minus its echelon reduction against this subspace."""
        v = list(v)
        for row, p in zip(self.vectors, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.ambient_dim):
                    if row[j]:
                        v[j] -= c * row[j]
        return v

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from the ambient dimension")
        return not any(self.residual(v))

    def coordinates(self, v: Sequence):
        """Coordinates of v in the echelon basis (``None`` if v is outside)."""
        if not self.contains(v):
            return None
        return tuple(v[p] for p in self.pivots)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains(v) for v in other.vectors)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if not other.vectors:
            return self
        if not self.vectors:
            return other
        return Subspace(list(self.vectors) + list(other.vectors), self.ambient_dim, self.ctx)

    def annihilator_rows(self) -> list:
        """Rows c with c.u = 0 for every u in the subspace."""
        n = self.ambient_dim
        if not self.vectors:
            return [list(v) for v in Subspace.full(n, self.ctx).vectors]
        return _kernel_from_rref([list(v) for v in self.vectors], list(self.pivots), n, self.ctx.zero, self.ctx.one)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        n = self.ambient_dim
        if not self.vectors or not other.vectors:
            return Subspace.zero(n, self.ctx)
        if self.dim == n:
            return other
        if other.dim == n:
            return self
        constraints = self.annihilator_rows() + other.annihilator_rows()
        rows, pivots = _rref_rows(constraints, n)
        return Subspace(_kernel_from_rref(rows, pivots, n, self.ctx.zero, self.ctx.one), n, self.ctx)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace([m.apply(v) for v in self.vectors], m.nrows, self.ctx)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.ctx == other.ctx and self.vectors == other.vectors

    def __hash__(self):
        return hash((self.ambient_dim, self.vectors))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def sum_of(spaces: Sequence[Subspace], n: int, ctx: FieldContext) -> Subspace:
    vecs = [v for s in spaces for v in s.vectors]
    return Subspace(vecs, n, ctx) if vecs else Subspace.zero(n, ctx)


def subspace_ops(u: Subspace, v: Subspace, op: str):
    """Dispatch ``op`` in {sum, intersect, contains_vector, equals}.

    For ``contains_vector`` the second argument is a vector, not a subspace.
    """
    if op == "sum":
        return u + v
    if op == "intersect":
        return u.intersect(v)
    if op == "contains_vector":
        return u.contains(v)
    if op == "equals":
        u._check(v)
        return u == v
    raise ValueError(f"unknown subspace operation {op!r}")


# ---------------------------------------------------------------------------


def rref_rank_kernel(m: Matrix):
    """Return (reduced row echelon form, rank, kernel subspace)."""
    rows, pivots = _rref_rows([list(r) for r in m.rows], m.ncols)
    kernel = Subspace(_kernel_from_rref(rows, pivots, m.ncols, m.ctx.zero, m.ctx.one), m.ncols, m.ctx)
    return Matrix._raw(tuple(tuple(r) for r in rows), m.ctx, m.ncols), len(pivots), kernel


def solve(m: Matrix, b: Matrix):
    """One solution x of m x = b for a column b, or ``None`` if inconsistent."""
    if m.ctx != b.ctx:
        raise MixedFieldContexts(f"{m.ctx} vs {b.ctx}")
    if b.ncols != 1 or b.nrows != m.nrows:
        raise ValueError("right-hand side must be a column with matching rows")
    n = m.ncols
    aug = [list(r) + [b.rows[i][0]] for i, r in enumerate(m.rows)]
    rows, pivots = _rref_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [m.ctx.zero] * n
    for k, p in enumerate(pivots):
        x[p] = rows[k][n]
    return Matrix._raw(tuple((v,) for v in x), m.ctx, 1)


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials


def characteristic_polynomial(m: Matrix) -> Poly:
    """det(xI - m), by similarity reduction to upper Hessenberg form.

    The reduction uses exact Gaussian elimination steps (a row operation
    paired with the inverse column operation), followed by the standard
    Hessenberg determinant recurrence. O(n^3) field operations.
    """
    if not m.is_square():
        raise NotSquare("characteristic polynomial of a non-square matrix")
    ctx = m.ctx
    n = m.nrows
    h = [list(r) for r in m.rows]
    for c in range(1, n - 1):
        piv = next((i for i in range(c, n) if h[i][c - 1]), None)
        if piv is None:
            continue
        if piv != c:
            h[piv], h[c] = h[c], h[piv]
            for r in h:
                r[piv], r[c] = r[c], r[piv]
        t = h[c][c - 1]
        for i in range(c + 1, n):
            if not h[i][c - 1]:
                continue
            u = h[i][c - 1] / t
            rc, ri = h[c], h[i]
            for j in range(n):
                if rc[j]:
                    ri[j] -= u * rc[j]
            for r in h:
                if r[i]:
                    r[c] += u * r[i]
    x = Poly.x(ctx)
    polys = [Poly.constant(1, ctx)]
    for k in range(1, n + 1):
        pk = (x - h[k - 1][k - 1]) * polys[k - 1]
        t = ctx.one
        for i in range(k - 1, 0, -1):
            t = t * h[i][i - 1]
            if not t:
                break
            coef = h[i - 1][k - 1] * t
            if coef:
                pk = pk - polys[i - 1] * coef
        polys.append(pk)
    return polys[n]


def minimal_polynomial(m: Matrix) -> Poly:
    """Least common multiple of the local minimal polynomials of unit vectors.

    Unit vectors already inside the Krylov spaces processed so far are
    skipped, since the running lcm annihilates them.
    """
    if not m.is_square():
        raise NotSquare("minimal polynomial of a non-square matrix")
    ctx = m.ctx
    n = m.nrows
    result = Poly.constant(1, ctx)
    covered = Subspace.zero(n, ctx)
    z, o = ctx.zero, ctx.one
    for j in range(n):
        e = tuple(o if i == j else z for i in range(n))
        if covered.contains(e):
            continue
        krylov = [e]
        while True:
            nxt = m.apply(krylov[-1])
            km = Matrix.from_columns(krylov, ctx, n)
            sol = solve(km, Matrix._raw(tuple((v,) for v in nxt), ctx, 1))
            if sol is not None:
                coeffs = [-sol.rows[i][0] for i in range(len(krylov))] + [o]
                local = Poly(coeffs, ctx)
                break
            krylov.append(nxt)
        result = result.lcm(local)
        covered = covered + Subspace(krylov, n, ctx)
        if covered.dim == n:
            break
    return result


def char_min_poly(m: Matrix):
    """Return (characteristic polynomial, minimal polynomial), both monic."""
    return characteristic_polynomial(m), minimal_polynomial(m)


# ---------------------------------------------------------------------------
# roots


def _integer_divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for p, e in fmpz(n).factor():
        p = int(p)
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _rational_roots(p: fmpq_poly) -> list:
    """Distinct rational roots of a rational polynomial (rational-root test)."""
    roots = []
    if not p:
        return roots
    coeffs = list(p.coeffs())
    if not coeffs[0]:
        roots.append(0)
        while coeffs and not coeffs[0]:
            coeffs.pop(0)
        p = fmpq_poly(coeffs)
    if p.degree() < 1:
        return roots
    dp = p.derivative()
    g = poly_gcd(p, dp)
    sqf = p // g if g.degree() > 0 else p
    ints = sqf.numer()  # integer polynomial with the same roots
    a0, an = int(ints[0]), int(ints[ints.degree()])
    for den in _integer_divisors(an):
        for num in _integer_divisors(a0):
            for s in (1, -1):
                c = _to_fmpq(s * num) / den
                if c.q != den:
                    continue  # not in lowest terms; already tried
                if not sqf(c):
                    roots.append(c)
    return roots


def _roots_over_q(p: Poly) -> list:
    fp = fmpq_poly([_to_fmpq(c) for c in p.coeffs])
    return [_to_mpq(r) if not isinstance(r, int) else p.ctx(r) for r in _rational_roots(fp)]


def _monomial_roots_over_qq(p: Poly) -> list:
    """Distinct roots of the form c*q^k (c rational, nonzero), plus 0."""
    ctx = p.ctx
    coeffs = list(p.coeffs)
    roots = []
    if not coeffs[0]:
        roots.append(ctx.zero)
        while not coeffs[0]:
            coeffs.pop(0)
    if len(coeffs) < 2:
        return roots
    # clear denominators so each coefficient is a polynomial in q
    den = coeffs[0].den
    for c in coeffs[1:]:
        g = poly_gcd(den, c.den)
        den = den * (c.den // g) if g.degree() > 0 else den * c.den
    polys = [c.num * (den // c.den) for c in coeffs]
    bound = max(pp.degree() for pp in polys)
    nlam = len(polys) - 1
    for k in range(-bound, bound + 1):
        # sum_i a_i(q) c^i q^(i k): gather by power of q
        shift = max(0, -k * nlam)
        by_power: dict[int, dict[int, object]] = {}
        for i, a in enumerate(polys):
            for e, coef in enumerate(a.coeffs()):
                if coef:
                    by_power.setdefault(e + i * k + shift, {})[i] = coef
        g = None
        for terms in by_power.values():
            cp = fmpq_poly([terms.get(i, 0) for i in range(max(terms) + 1)])
            g = cp if g is None else poly_gcd(g, cp)
            if g.degree() < 1:
                break
        if g is None or g.degree() < 1:
            continue
        for c in _rational_roots(g):
            if c:
                roots.append(RationalFunction.monomial(c, k))
    return roots



def _factored_roots_over_qq(p: Poly) -> list:
    """Roots found by factoring the cleared numerator as a polynomial in (x, q).

    Only factors of degree one in x contribute, each giving the root -b(q)/a(q).
    """
    ctx = p.ctx
    coeffs = list(p.coeffs)
    den = coeffs[0].den
    for c in coeffs[1:]:
        den = den * (c.den // poly_gcd(den, c.den))
    polys = [c.num * (den // c.den) for c in coeffs]
    scale = math.lcm(*(int(coef.q) for a in polys for coef in a.coeffs()))
    terms = {}
    for i, a in enumerate(polys):
        for e, coef in enumerate(a.coeffs()):
            if coef:
                terms[(i, e)] = int((coef * scale).p)
    mctx = fmpz_mpoly_ctx.get(("x", "q"), "lex")
    _, factors = mctx.from_dict(terms).factor()
    roots = []
    for f, _ in factors:
        if f.degrees()[0] != 1:
            continue
        lead, tail = [0], [0]
        for (i, e), coef in f.to_dict().items():
            target = lead if i else tail
            target.extend([0] * (e + 1 - len(target)))
            target[e] += int(coef)
        a = RationalFunction(fmpq_poly(lead), fmpq_poly([1]))
        b = RationalFunction(fmpq_poly(tail), fmpq_poly([1]))
        roots.append(ctx(-b / a))
    return roots


def linear_roots(p: Poly, candidates: Sequence | None = None):
    """All roots of ``p`` in the working field, with multiplicity.

    Returns ``None`` (the Unsupported outcome) when the roots found do not
    account for the full degree. Over Q the rational-root test is complete.
    Over Q(q) candidates c*q^k are searched, plus any ``candidates`` given.
    """
    if not p:
        raise ValueError("the zero polynomial has no finite root list")
    ctx = p.ctx
    if ctx.kind == RATIONALS:
        distinct = _roots_over_q(p)
    else:
        distinct = _monomial_roots_over_qq(p)
    seen = set(distinct)
    for c in candidates or ():
        c = ctx(c)
        if c not in seen and not p(c):
            distinct.append(c)
            seen.add(c)
    roots = []
    rest = p
    for r in distinct:
        lin = Poly._raw([-r, ctx.one], ctx)
        while rest.degree > 0:
            quo, rem = divmod(rest, lin)
            if rem:
                break
            roots.append(r)
            rest = quo
    if len(roots) != p.degree and ctx.kind != RATIONALS and rest.degree > 0:
        for r in _factored_roots_over_qq(rest):
            lin = Poly._raw([-r, ctx.one], ctx)
            while rest.degree > 0:
                quo, rem = divmod(rest, lin)
                if rem:
                    break
                roots.append(r)
                rest = quo
    if len(roots) != p.degree:
        return None
    return roots


# ---------------------------------------------------------------------------
# eigenspaces, projectors, interpolation


def _eigenspace(m: Matrix, theta) -> Subspace:
    n = m.nrows
    rows = [list(r) for r in m.rows]
    for i in range(n):
        rows[i][i] = rows[i][i] - theta
    rows, pivots = _rref_rows(rows, n)
    return Subspace(_kernel_from_rref(rows, pivots, n, m.ctx.zero, m.ctx.one), n, m.ctx)


def _distinct(values) -> bool:
    return len(set(values)) == len(values)


def eigendecompose(m: Matrix, eigenvalues: Sequence | None = None):
    """List of (eigenvalue, eigenspace) covering the whole space.

    With ``eigenvalues`` given, their eigenspaces are tried first; if they do
    not fill the space the spectrum is rediscovered from the characteristic
    polynomial with the hints as extra root candidates.

    Raises NotDiagonalizable or Unsupported.
    """
    if not m.is_square():
        raise NotSquare("eigendecomposition of a non-square matrix")
    ctx = m.ctx
    n = m.nrows
    if eigenvalues is not None:
        hints = [ctx(t) for t in eigenvalues]
        if not _distinct(hints):
            raise DuplicateEigenvalues("supplied eigenvalues are not distinct")
        found = []
        total = 0
        for t in hints:
            sp = _eigenspace(m, t)
            if sp.dim:
                found.append((t, sp))
                total += sp.dim
        if total == n:
            return found
    else:
        hints = None
    roots = linear_roots(characteristic_polynomial(m), hints)
    if roots is None:
        raise Unsupported("eigenvalues lie outside the working field")
    distinct = []
    for r in roots:
        if r not in distinct:
            distinct.append(r)
    if ctx.kind == RATIONALS:
        distinct.sort()
    pairs = [(t, _eigenspace(m, t)) for t in distinct]
    if sum(sp.dim for _, sp in pairs) != n:
        raise NotDiagonalizable("eigenspaces do not span the space")
    return pairs


def lagrange_projector(m: Matrix, theta, all_eigenvalues: Sequence) -> Matrix:
    """prod_{j != i} (m - theta_j I)/(theta_i - theta_j)."""
    ctx = m.ctx
    values = [ctx(t) for t in all_eigenvalues]
    if not _distinct(values):
        raise DuplicateEigenvalues("eigenvalues are not distinct")
    theta = ctx(theta)
    result = Matrix.identity(m.nrows, ctx)
    for t in values:
        if t == theta:
            continue
        result = (result @ m.shift(-t)) * (1 / (theta - t))
    return result


def vandermonde_interpolate(nodes: Sequence, values: Sequence, ctx: FieldContext | None = None) -> Poly:
    """The polynomial of degree < n through (nodes[i], values[i]).

    Solves the Vandermonde system directly.
    """
    if len(nodes) != len(values):
        raise ValueError("nodes and values differ in length")
    if not nodes:
        raise ValueError("at least one node is needed")
    if ctx is None:
        ctx = _guess_ctx(list(nodes) + list(values))
    xs = [ctx(x) for x in nodes]
    ys = [ctx(y) for y in values]
    if not _distinct(xs):
        raise DuplicateNodes("interpolation nodes must be distinct")
    n = len(xs)
    rows = []
    for x in xs:
        row, p = [], ctx.one
        for _ in range(n):
            row.append(p)
            p = p * x
        rows.append(tuple(row))
    vm = Matrix._raw(tuple(rows), ctx, n)
    sol = solve(vm, Matrix._raw(tuple((y,) for y in ys), ctx, 1))
    return Poly([sol.rows[i][0] for i in range(n)], ctx)


def _guess_ctx(values) -> FieldContext:
    from .field import Q, Qq

    return Qq if any(isinstance(v, RationalFunction) for v in values) else Q
