import pytest

from bidiagonal import Matrix, ParameterArray, lemma_report, pair_from_parameter_array
from bidiagonal.core import BidiagonalPair
from bidiagonal.field import Q, Qq
from bidiagonal.lemmas import CHECKS

q = Qq.q

ARRAYS = [
    (ParameterArray([3], [-1], [2]), Q),
    (ParameterArray([-1, 1], [1, -1], [2, 2]), Q),
    (ParameterArray([-2, 0, 2], [2, 0, -2], [1, 2, 1]), Q),
    (ParameterArray([1, 3, 11], [21, 5, 1], [1, 1, 1]), Q),
    (ParameterArray([-3, -1, 1, 3], [3, 1, -1, -3], [1, 2, 2, 1]), Q),
    (ParameterArray([q**2, 1, q**-2], [q**-2, 1, q**2], [1, 2, 1]), Qq),
    (ParameterArray([3 + 2 * q ** (-2 * k) for k in (0, 1, 2)], [q ** (2 * k) for k in (0, 1, 2)], [1, 1, 1]), Qq),
]


@pytest.mark.parametrize("params, ctx", ARRAYS)
def test_constructed_pairs_pass_every_check(params, ctx):
    report = lemma_report(pair_from_parameter_array(params, ctx))
    assert set(report) == set(CHECKS)
    assert all(messages == [] for messages in report.values()), report


def test_tampered_pair_is_caught(sl2_d2):
    # keep the eigen data of the genuine pair but push V*_0 into V*_2
    bump = Matrix([[0, 0, 0], [0, 0, 0], [5, 0, 0]], Q)
    bad = BidiagonalPair(sl2_d2.A, sl2_d2.Astar + bump, sl2_d2.eig, sl2_d2.eig_star, 2)
    report = lemma_report(bad)
    for name in ("raising", "bracket_powers", "block_structure", "refinement"):
        assert report[name], name
