"""Seeded generators for random valid K-matrices and unimodular changes of basis."""

import random

from .exactlin import KMatrix, congruent, determinant, validate_k_matrix


def random_k_matrix(
    rng: random.Random,
    max_n: int = 4,
    max_det: int = 200,
    spread: int = 3,
    min_n: int = 1,
) -> KMatrix:
    """A uniformly-drawn-then-filtered even symmetric K with ``0 < |det K| <= max_det``.

    Diagonal entries are even in ``[-2*spread, 2*spread]`` and off-diagonal
    entries lie in ``[-spread, spread]``; candidates are redrawn until the
    determinant bound holds.
    """
    while True:
        n = rng.randint(min_n, max_n)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 2 * rng.randint(-spread, spread)
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.randint(-spread, spread)
        d = determinant(rows)
        if d != 0 and abs(d) <= max_det:
            return validate_k_matrix(rows)


def random_k_corpus(seed: int, count: int, **kwargs) -> list:
    rng = random.Random(seed)
    return [random_k_matrix(rng, **kwargs) for _ in range(count)]


def random_unimodular(n: int, rng: random.Random, steps: int = 8, spread: int = 2):
    """Product of elementary integer row operations and sign flips."""
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        if n > 1 and rng.random() < 0.8:
            i, j = rng.sample(range(n), 2)
            c = rng.randint(-spread, spread)
            P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        else:
            i = rng.randrange(n)
            P[i] = [-a for a in P[i]]
    return tuple(tuple(r) for r in P)


def random_congruent(K: KMatrix, rng: random.Random, **kwargs) -> KMatrix:
    """``P^T K P`` for a random unimodular ``P``."""
    return validate_k_matrix(congruent(K.entries, random_unimodular(K.n, rng, **kwargs)))
