"""
Which K-matrices look the same to an experimentalist?
=====================================================

Measurable data is (G, q) together with c mod 8.  Stabilizing by unimodular
blocks or changing basis leaves it alone; reversing orientation does not.
"""

import random

from toralcs import measurable_equivalent, validate_k_matrix
from toralcs.exactlin import HYPERBOLIC_PLANE, block_diagonal, e8_cartan
from toralcs.samples import random_congruent

K = validate_k_matrix([[2, 1], [1, 2]])

candidates = {
    "[[2,-1],[-1,2]]": [[2, -1], [-1, 2]],
    "K + U": block_diagonal(K.entries, HYPERBOLIC_PLANE),
    "K + E8": block_diagonal(K.entries, e8_cartan()),
    "P^T K P": random_congruent(K, random.Random(0)),
    "-K": -K,
    "[[6]]": [[6]],
}
for name, other in candidates.items():
    r = measurable_equivalent(K, other)
    print(f"{name:>16}: {r.to_json()}")
