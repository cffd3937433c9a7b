"""
Recovering the quadratic module from S and T
============================================

Only the phase pattern of S, its normalization and the diagonal of T are
handed over.  The vacuum row, the group law and q are read back out.
"""

import numpy as np

from toralcs import DiscGroup, PhaseArray, find_isomorphism, modular_data, reconstruct, validate_k_matrix

K = validate_k_matrix([[2, 0, 0], [0, 4, 1], [0, 1, 2]])
G = DiscGroup(K)
md = modular_data(G, 1)
print("source group:", G, " |G| =", G.order)

# hide the labelling: shuffle rows and columns so the vacuum is no longer first
perm = np.random.default_rng(3).permutation(G.order)
S = PhaseArray(md.omega.numerators[np.ix_(perm, perm)], md.omega.modulus)
T = PhaseArray(md.t.numerators[perm], md.t.modulus)

theory = reconstruct(S, md.norm, T)
print("vacuum found at shuffled position", theory.vacuum)
print("recovered invariant factors:", theory.invariant_factors())
print("central charge read off the Gauss sum:", theory.gauss_central_charge(), "  sigma(K) mod 8:", K.sigma % 8)

# an explicit isomorphism back to the discriminant group, checked on every element
phi = find_isomorphism(G, theory)
print("generator images (label indices):", phi.images)
print("permutation of labels:", phi.permutation().tolist())
