import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

from bidiagonal import ParameterArray, pair_from_parameter_array  # noqa: E402
from bidiagonal.field import Q, Qq  # noqa: E402


@pytest.fixture(scope="session")
def sl2_d2():
    """A = Y, A* = Z on V(2): the standard reduced pair of diameter 2."""
    return pair_from_parameter_array(ParameterArray([-2, 0, 2], [2, 0, -2], [1, 1, 1]), Q)


@pytest.fixture(scope="session")
def q_d2():
    q = Qq.q
    return pair_from_parameter_array(ParameterArray([q**2, 1, q**-2], [q**-2, 1, q**2], [1, 1, 1]), Qq)


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
