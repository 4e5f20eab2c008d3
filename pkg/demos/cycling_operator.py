"""
The operator that cycles x, y, z
================================

On the irreducible U_q(sl2) module V(d, +1) an invertible operator
conjugates x to y, y to z and z back to x.
"""

from bidiagonal import solve_cycling_operator, uq_irreducible
from bidiagonal.field import Qq

for d in range(4):
    m = uq_irreducible(d, 1, Qq)
    x, y, z = (m.equitable[k] for k in "xyz")
    omega = solve_cycling_operator(m)
    inv = omega.inverse()
    ok = inv @ x @ omega == y and inv @ y @ omega == z and inv @ z @ omega == x
    print(f"d = {d}: cycles = {ok}")
    if d == 1:
        print(omega.pretty())
