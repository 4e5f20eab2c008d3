"""
Recognising a pair in disguise
==============================

Conjugate a pair by a random change of basis, verify the result without
any hints, and recover the intertwining map from highest vectors.
"""

import random

from bidiagonal import Matrix, ParameterArray, isomorphism, pair_from_parameter_array, verify
from bidiagonal.field import Q

rng = random.Random(0)
pair = pair_from_parameter_array(ParameterArray([-3, -1, 1, 3], [3, 1, -1, -3], [1, 2, 2, 1]), Q)
n = pair.n

while True:
    s = Matrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)], Q)
    if s.is_invertible():
        break
s_inv = s.inverse()
disguised = verify(s_inv @ pair.A @ s, s_inv @ pair.Astar @ s)
print("disguised pair is bidiagonal:", disguised.is_bidiagonal)
print("same parameter array:", disguised.parameter_array == pair.params)

mu = isomorphism(pair, disguised.pair)
print("mu intertwines A:", mu @ pair.A == disguised.pair.A @ mu)
print("mu intertwines A*:", mu @ pair.Astar == disguised.pair.Astar @ mu)

# a different shape means no isomorphism at all
other = pair_from_parameter_array(ParameterArray([-3, -1, 1, 3], [3, 1, -1, -3], [1, 1, 1, 1]), Q)
print("isomorphic to shape (1,1,1,1):", isomorphism(pair, other) is not None)
