import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bidiagonal import (
    Matrix,
    ModuleSpec,
    ParameterArray,
    Summand,
    direct_sum,
    module_from_reduced_pair,
    module_from_shape,
    pair_from_parameter_array,
    reduce,
    sl2_irreducible,
    solve_cycling_operator,
    uq_irreducible,
    verify,
)
from bidiagonal.errors import NotReduced, ShapeInvalid
from bidiagonal.field import Q, Qq
from bidiagonal.modules import relation_failures

q = Qq.q


def test_sl2_v2_equitable_matrices():
    m = sl2_irreducible(2, Q)
    assert m.equitable["X"] == Matrix([[-2, 4, 0], [0, 0, 2], [0, 0, 2]], Q)
    assert m.equitable["Y"] == Matrix([[-2, 0, 0], [-2, 0, 0], [0, -4, 2]], Q)
    assert m.equitable["Z"] == Matrix.diagonal([2, 0, -2], Q)


def test_uq_v1_equitable_matrices():
    m = uq_irreducible(1, 1, Qq)
    assert m.equitable["x"] == Matrix.diagonal([q, 1 / q], Qq)
    assert m.equitable["y"] == Matrix([[1 / q, 0], [q - 1 / q, q]], Qq)
    assert m.equitable["z"] == Matrix([[1 / q, 1 / q - q], [0, q]], Qq)


@pytest.mark.parametrize("d", range(5))
def test_irreducibles_satisfy_relations(d):
    assert relation_failures(sl2_irreducible(d, Q)) == []
    for eps in (1, -1):
        assert relation_failures(uq_irreducible(d, eps, Qq)) == []


def test_uq_with_numeric_q():
    m = uq_irreducible(2, 1, Q, q=Q(2))
    assert relation_failures(m) == []
    assert m.generators["k"] == Matrix.diagonal([4, 1, Q("1/4")], Q)


def test_direct_sum_segregation():
    _, report = direct_sum(ModuleSpec("sl2", (Summand(2), Summand(1))), Q)
    assert report.components == {"even": 3, "odd": 2}
    assert not report.segregated
    module, report = direct_sum(ModuleSpec("sl2", (Summand(2), Summand(0))), Q)
    assert report.segregated and module.dimension == 4


def test_direct_sum_sign_components():
    _, report = direct_sum(ModuleSpec("uq", (Summand(1, 1, 1), Summand(1, 1, -1))), Qq)
    assert report.components["odd,+1"] == 2 and report.components["odd,-1"] == 2
    assert not report.segregated


def test_module_from_shape():
    assert module_from_shape(2, [1, 2, 1]) == ModuleSpec("sl2", (Summand(2, 1), Summand(0, 1)))
    assert module_from_shape(3, [2, 2, 2, 2]) == ModuleSpec("sl2", (Summand(3, 2),))


@pytest.mark.parametrize("d, rho", [(1, [1, 2]), (2, [2, 1, 2]), (0, [0]), (3, [1, 1, 1])])
def test_module_from_shape_rejects(d, rho):
    with pytest.raises(ShapeInvalid):
        module_from_shape(d, rho)


def test_pair_from_small_q_array_gives_equitable_pair():
    pair = pair_from_parameter_array(ParameterArray([q, 1 / q], [1 / q, q], [1, 1]), Qq)
    m = uq_irreducible(1, 1, Qq)
    assert pair.A == m.equitable["y"] and pair.Astar == m.equitable["z"]


def test_pair_from_affine_array_round_trips():
    params = ParameterArray([5, 7, 9], [1, 0, -1], [1, 1, 1])
    pair = pair_from_parameter_array(params, Q)
    assert pair.params == params
    red, _ = reduce(pair)
    assert red.theta == (-2, 0, 2) and red.theta_star == (2, 0, -2)


def test_module_from_reduced_pair():
    pair = pair_from_parameter_array(ParameterArray([-2, 0, 2], [2, 0, -2], [1, 2, 1]), Q)
    module, spec = module_from_reduced_pair(pair)
    assert spec == ModuleSpec("sl2", (Summand(2, 1), Summand(0, 1)))
    assert relation_failures(module) == []
    assert module.equitable["Y"] == pair.A and module.equitable["Z"] == pair.Astar


def test_module_from_reduced_pair_needs_reduced():
    pair = pair_from_parameter_array(ParameterArray([5, 7, 9], [1, 0, -1], [1, 1, 1]), Q)
    with pytest.raises(NotReduced):
        module_from_reduced_pair(pair)


@pytest.mark.parametrize("d", range(4))
def test_cycling_operator(d):
    m = uq_irreducible(d, 1, Qq)
    x, y, z = (m.equitable[k] for k in "xyz")
    omega = solve_cycling_operator(m)
    inv = omega.inverse()
    assert inv @ x @ omega == y and inv @ y @ omega == z and inv @ z @ omega == x


@settings(max_examples=20)
@given(st.integers(0, 3), st.integers(1, 2), st.integers(0, 2))
def test_equitable_pairs_are_reduced_bidiagonal(d, m, extra):
    summands = [Summand(d, m)] + ([Summand(d - 2, extra)] if extra and d >= 2 else [])
    module, report = direct_sum(ModuleSpec("sl2", tuple(summands)), Q)
    assert report.segregated
    result = verify(module.equitable["Y"], module.equitable["Z"])
    assert result.is_bidiagonal
    assert result.theta == tuple(2 * i - d for i in range(d + 1))
