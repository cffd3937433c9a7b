"""
The Maslov index and its K-matrix scaling
=========================================

Three lines in the plane have Maslov index -1; tensoring with K scales the
index by sigma(K), which is what produces the projective phase of composed
BKS operators.
"""

import random

from toralcs import SymplecticSpace, bks_cocycle_phase, kashiwara_index, mu_k
from toralcs.maslov import cocycle_sum, random_lagrangian

plane = SymplecticSpace.standard(1)
x_axis, y_axis, diagonal = [(1, 0)], [(0, 1)], [(1, 1)]
mu = kashiwara_index(plane, x_axis, y_axis, diagonal)
print("mu =", mu)

K = [[2, 1], [1, 2]]
mu_K = mu_k(K, plane, x_axis, y_axis, diagonal)
print("mu_K =", mu_K, "  cocycle phase (units of pi):", bks_cocycle_phase(mu_K))

# the index is a cocycle: its alternating sum over four Lagrangians vanishes
rng = random.Random(1)
V = SymplecticSpace.standard(3)
quad = [random_lagrangian(3, rng) for _ in range(4)]
print("alternating sum:", cocycle_sum(V, *quad))
