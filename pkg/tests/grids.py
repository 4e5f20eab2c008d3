"""Parameter-array grids shared by the acceptance suite and the property tests."""

from itertools import product

from bidiagonal import ParameterArray
from bidiagonal.field import Q, Qq


def shapes(d, max_rho=3):
    """Symmetric shapes of diameter d, nondecreasing to the middle, entries <= max_rho."""
    half = d // 2 + 1
    out = []
    for head in product(range(1, max_rho + 1), repeat=half):
        if any(head[i] > head[i + 1] for i in range(half - 1)):
            continue
        rho = [head[min(i, d - i)] for i in range(d + 1)]
        out.append(tuple(rho))
    return out


def rational_grid(max_d=5):
    """b = 1 arrays theta_i = b1 + 2 b2 i, theta*_i = c1 - 2 c2 i."""
    halves = [Q(1), Q("1/2")]
    for d in range(max_d + 1):
        for rho in shapes(d):
            for b1, b2, c1, c2 in product([-1, 0, 2], halves, [-1, 0, 2], halves):
                theta = [Q(b1) + 2 * b2 * i for i in range(d + 1)]
                theta_s = [Q(c1) - 2 * c2 * i for i in range(d + 1)]
                yield ParameterArray(theta, theta_s, rho)


def q_grid(max_d=4):
    """theta_i = b1 + b2 q^(-2i), theta*_i = c1 + c2 q^(2i) over Q(q)."""
    q = Qq.q
    for d in range(max_d + 1):
        for rho in shapes(d):
            for b1, b2, c1, c2 in product([0, 1], [1, 2], [0, 1], [1, 2]):
                theta = [b1 + b2 * q ** (-2 * i) for i in range(d + 1)]
                theta_s = [c1 + c2 * q ** (2 * i) for i in range(d + 1)]
                yield ParameterArray(theta, theta_s, rho)
