"""
The rank-two example, end to end
================================

K = [[2, 1], [1, 2]] is the A2 root lattice.  Its discriminant group is Z/3
and every quantity below is exact.
"""

from toralcs import DiscGroup, modular_data, validate_k_matrix, verify_s_unitary
from toralcs.cli import phase_symbol
from toralcs.modular import cylinder_factor, state_space_dimension, verify_modular_relations
from toralcs.tqft import z_s3

K = validate_k_matrix([[2, 1], [1, 2]])
G = DiscGroup(K)
print("det K =", K.det, "  signature =", K.sigma, "  G =", G)

# twists of the three anyons: vacuum, then two with spin 1/3
for u, q in zip(G.elements(), G.q_table()):
    print(u, phase_symbol(q))

# the genus-one S matrix is a phase table times 3^(-1/2)
md = modular_data(G, 1)
print("S =", md.norm, "*")
for row in md.omega.to_strings():
    print("   ", row)
print("unitary:", verify_s_unitary(md))
print("S^2 = C and (ST)^3 = e^(2 pi i c/8):", verify_modular_relations(md, K.sigma % 8))

# state spaces grow like 3^g; the closed three-sphere gives 3^(-1/2)
print([state_space_dimension(G, g) for g in range(6)])
print("cylinder factor at genus 1:", cylinder_factor(G, 1))
print("Z(S^3) =", z_s3(K))
