"""
Gauss sums across random K-matrices
===================================

For each K the Gauss sum of q is compared exactly with sqrt|G| e^(2 pi i c/8),
and the class c found this way is compared with the signature.
"""

from collections import Counter

from toralcs import DiscGroup
from toralcs.disc import gauss_central_charge
from toralcs.samples import random_k_corpus

corpus = random_k_corpus(seed=5, count=40, max_n=4, max_det=120)
agree = 0
classes = Counter()
for K in corpus:
    c = gauss_central_charge(DiscGroup(K))
    classes[c] += 1
    agree += c == K.sigma % 8

print(f"{agree}/{len(corpus)} Gauss sums certify c = sigma mod 8")
print("distribution of c mod 8:", dict(sorted(classes.items())))
