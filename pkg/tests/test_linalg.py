import pytest
from hypothesis import given
from hypothesis import strategies as st

from bidiagonal import (
    Matrix,
    Poly,
    Subspace,
    char_min_poly,
    eigendecompose,
    lagrange_projector,
    linear_roots,
    rref_rank_kernel,
    solve,
    subspace_ops,
    vandermonde_interpolate,
)
from bidiagonal.errors import (
    AmbientMismatch,
    DivisionByZero,
    DuplicateEigenvalues,
    DuplicateNodes,
    MixedFieldContexts,
    NotDiagonalizable,
    NotSquare,
    Unsupported,
)
from bidiagonal.field import Q, Qq

q = Qq.q


def M(rows, ctx=Q):
    return Matrix(rows, ctx)


def e(i, n=3):
    return [1 if j == i else 0 for j in range(n)]


@st.composite
def int_matrices(draw, n=None, lo=-3, hi=3):
    n = n or draw(st.integers(1, 4))
    return Matrix([[draw(st.integers(lo, hi)) for _ in range(n)] for _ in range(n)], Q)


@st.composite
def subspaces(draw, n=5):
    k = draw(st.integers(0, n))
    vecs = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(k)]
    return Subspace([[Q(x) for x in v] for v in vecs], n, Q)


# -- rank, kernel, solve -------------------------------------------------------


def test_identity_rank():
    _, rank, kernel = rref_rank_kernel(Matrix.identity(3, Q))
    assert rank == 3 and kernel.dim == 0


def test_zero_rank():
    _, rank, kernel = rref_rank_kernel(Matrix.zeros(2, 2, Q))
    assert rank == 0 and kernel == Subspace.full(2, Q)


def test_rank_one_over_qq():
    m = Matrix([[1, q], [q, q**2]], Qq)
    _, rank, kernel = rref_rank_kernel(m)
    assert rank == 1
    assert kernel == Subspace([[-q, 1]], 2, Qq)


@given(int_matrices())
def test_rank_nullity(m):
    _, rank, kernel = rref_rank_kernel(m)
    assert rank + kernel.dim == m.ncols
    for v in kernel.vectors:
        assert not any(m.apply(v))


def test_solve_examples():
    b = M([[5], [7]])
    assert solve(Matrix.identity(2, Q), b) == b
    assert solve(M([[1, 1], [0, 1]]), M([[3], [1]])) == M([[2], [1]])
    assert solve(M([[1, 1], [1, 1]]), M([[1], [2]])) is None


def test_solve_rejects_mixed_fields():
    with pytest.raises(MixedFieldContexts):
        solve(Matrix.identity(1, Q), Matrix([[1]], Qq))


@given(int_matrices(n=3), st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_solve_consistent_systems(m, x):
    b = Matrix([[v] for v in m.apply([Q(t) for t in x])], Q)
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


def test_inverse():
    m = M([[2, 1], [1, 1]])
    assert m @ m.inverse() == Matrix.identity(2, Q)
    with pytest.raises(DivisionByZero):
        M([[1, 2], [2, 4]]).inverse()


# -- subspaces -----------------------------------------------------------------


def test_subspace_examples():
    u = Subspace([e(0)], 3, Q)
    v = Subspace([e(1)], 3, Q)
    plane = Subspace([e(0), e(1)], 3, Q)
    assert subspace_ops(u, u, "intersect") == u
    assert subspace_ops(u, v, "sum") == plane
    diag = Subspace([[1, 1, 0]], 3, Q)
    assert subspace_ops(diag, plane, "intersect") == diag
    assert subspace_ops(plane, [1, 1, 0], "contains_vector")
    assert subspace_ops(plane, plane, "equals")


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        Subspace.zero(2, Q) + Subspace.zero(3, Q)


def test_canonical_form():
    a = Subspace([[1, 2, 3], [0, 1, 1]], 3, Q)
    b = Subspace([[1, 3, 4], [2, 5, 7]], 3, Q)
    assert a == b
    assert a.basis == b.basis


@given(subspaces(), subspaces())
def test_dimension_formula(u, v):
    assert u.dim + v.dim == (u + v).dim + u.intersect(v).dim
    inter = u.intersect(v)
    assert u.contains_subspace(inter) and v.contains_subspace(inter)


# -- polynomials and roots -------------------------------------------------------


def test_char_min_examples():
    c, m = char_min_poly(Matrix.diagonal([1, 2], Q))
    assert c == m == Poly.from_roots([1, 2], Q)
    _, m = char_min_poly(Matrix.identity(3, Q))
    assert m == Poly.from_roots([1], Q)
    _, m = char_min_poly(M([[0, 1], [0, 0]]))
    assert m == Poly([0, 0, 1], Q)


def test_char_min_needs_square():
    with pytest.raises(NotSquare):
        char_min_poly(M([[1, 2]]))


@given(int_matrices())
def test_minpoly_divides_charpoly(m):
    c, mp = char_min_poly(m)
    assert c.degree == m.nrows and c.leading == 1 and mp.leading == 1
    assert not (c % mp)
    assert mp(m).is_zero() and c(m).is_zero()


def test_linear_roots():
    assert linear_roots(Poly([2, -3, 1], Q)) == [1, 2]
    assert linear_roots(Poly([-2, 0, 1], Q)) is None
    roots = linear_roots(Poly([1, -(q + 1 / q), 1], Qq))
    assert set(roots) == {q, 1 / q}


def test_linear_roots_multiplicity_and_shifted_monomials():
    p = Poly.from_roots([1 + 2 * q**-2, 1 + 2 * q**-2, 3 * q], Qq)
    assert sorted(map(str, linear_roots(p))) == sorted(map(str, [1 + 2 * q**-2, 1 + 2 * q**-2, 3 * q]))


def test_linear_roots_with_candidates():
    odd = q**3 + q + 7
    p = Poly.from_roots([odd, q], Qq)
    assert set(linear_roots(p, [odd])) == {odd, q}


# -- eigen decomposition -----------------------------------------------------------


def test_eigendecompose_diagonal():
    out = eigendecompose(Matrix.diagonal([2, 0, -2], Q))
    assert [t for t, _ in out] == [-2, 0, 2]
    assert all(s.dim == 1 for _, s in out)


def test_eigendecompose_nilpotent():
    with pytest.raises(NotDiagonalizable):
        eigendecompose(M([[0, 1], [0, 0]]))


def test_eigendecompose_irrational():
    with pytest.raises(Unsupported):
        eigendecompose(M([[0, 2], [1, 0]]))


def test_eigendecompose_lower_triangular():
    y = M([[-2, 0, 0], [-2, 0, 0], [0, -4, 2]])
    assert sorted(t for t, _ in eigendecompose(y)) == [-2, 0, 2]


@given(int_matrices(n=3, lo=-2, hi=2))
def test_diagonalizable_iff_squarefree_minpoly(m):
    _, mp = char_min_poly(m)
    squarefree = mp.gcd(mp.derivative()).degree == 0
    try:
        out = eigendecompose(m)
    except Unsupported:
        return
    except NotDiagonalizable:
        assert not squarefree
        return
    assert squarefree
    assert sum(s.dim for _, s in out) == 3
    for t, s in out:
        for v in s.vectors:
            assert not any(m.shift(-t).apply(v))


def test_projectors():
    m = Matrix.diagonal([1, 2], Q)
    assert lagrange_projector(m, 1, [1, 2]) == Matrix.diagonal([1, 0], Q)
    assert lagrange_projector(Matrix.identity(2, Q) * 5, 5, [5]) == Matrix.identity(2, Q)
    with pytest.raises(DuplicateEigenvalues):
        lagrange_projector(m, 1, [1, 1, 2])


def test_projector_partition(sl2_d2):
    values = list(sl2_d2.theta)
    es = [lagrange_projector(sl2_d2.A, t, values) for t in values]
    total = es[0] + es[1] + es[2]
    assert total == Matrix.identity(3, Q)
    for i, a in enumerate(es):
        for j, b in enumerate(es):
            assert a @ b == (a if i == j else Matrix.zeros(3, 3, Q))
        assert a @ sl2_d2.A == sl2_d2.A @ a == a * values[i]
    assert es[0].rank() == 1


def test_vandermonde():
    assert vandermonde_interpolate([0, -2], [2, 0], Q) == Poly([2, 1], Q)
    assert vandermonde_interpolate([3], [7], Q) == Poly([7], Q)
    assert vandermonde_interpolate([2, 0, -2], [4, 0, -4], Q) == Poly([0, 2], Q)
    with pytest.raises(DuplicateNodes):
        vandermonde_interpolate([1, 1], [0, 1], Q)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5, unique=True), st.data())
def test_vandermonde_hits_every_point(nodes, data):
    values = data.draw(st.lists(st.integers(-5, 5), min_size=len(nodes), max_size=len(nodes)))
    p = vandermonde_interpolate(nodes, values, Q)
    assert p.degree <= len(nodes) - 1
    assert [p(Q(x)) for x in nodes] == values
