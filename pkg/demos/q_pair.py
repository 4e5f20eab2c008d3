"""
A pair with base q^-2
=====================

Over the field Q(q), eigenvalues of the form b1 + b2 q^(-2i) give a pair
whose reduced form is the equitable pair (y, z) of a U_q(sl2) module.
"""

from bidiagonal import (
    ParameterArray,
    base,
    module_from_reduced_pair,
    pair_from_parameter_array,
    reduce,
    split_subspaces,
    third_operator,
)
from bidiagonal.field import Qq

q = Qq.q
d = 2
params = ParameterArray(
    [1 + 2 * q ** (-2 * i) for i in range(d + 1)],
    [q ** (2 * i) for i in range(d + 1)],
    [1, 2, 1],
)
pair = pair_from_parameter_array(params, Qq)
print("base:", Qq.format(base(pair)))

reduced, witness = reduce(pair)
print("reduced eigenvalues:", [Qq.format(t) for t in reduced.theta])
print("reduced dual eigenvalues:", [Qq.format(t) for t in reduced.theta_star])

# the split decomposition and the operator acting on it
w = split_subspaces(reduced)
print("split dims:", w.dims)
B = third_operator(reduced)
print("third operator:")
print(B.pretty())

module, spec = module_from_reduced_pair(reduced)
print("module:", spec.to_dict())
print("y equals A:", module.equitable["y"] == reduced.A)
