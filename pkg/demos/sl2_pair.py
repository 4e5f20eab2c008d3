"""
A bidiagonal pair from a parameter array
========================================

Build a pair over the rationals from eigenvalue data and a shape, check it
from scratch, and look at the scalars tying A and A* together.
"""

from bidiagonal import (
    ParameterArray,
    classify_check,
    fundamental_relation,
    pair_from_parameter_array,
    reduce,
    relation_polynomials,
    verify,
)
from bidiagonal.field import Q

# eigenvalues step by 2, dual eigenvalues step by -4, shape (1, 2, 1)
params = ParameterArray([Q(1), Q(3), Q(5)], [Q(4), Q(0), Q(-4)], [1, 2, 1])
print("classification:", classify_check(params).clauses)

pair = pair_from_parameter_array(params, Q)
print("A =")
print(pair.A.pretty())
print("A* =")
print(pair.Astar.pretty())

# verify() rediscovers the eigenvalues and their order on its own
report = verify(pair.A, pair.Astar)
print("bidiagonal:", report.is_bidiagonal)
print("recovered array:", report.parameter_array.to_dict(Q))

rel = fundamental_relation(pair)
print(f"A A* - {rel.b} A* A - {rel.alpha} A - {rel.alpha_star} A* = {rel.gamma} I")

g, h = relation_polynomials(pair)
print("g =", g, " h =", h)

# an affine change of A and A* brings the pair to the standard eigenvalues
reduced, witness = reduce(pair)
print("reduced eigenvalues:", [str(t) for t in reduced.theta])
print("witness:", witness)
