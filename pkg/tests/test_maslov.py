import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import GOLDEN, rational_lagrangian
from toralcs.cyclo import Phase
from toralcs.errors import DimensionMismatch, NotLagrangian
from toralcs.exactlin import HYPERBOLIC_PLANE
from toralcs.maslov import (
    SymplecticSpace,
    bks_cocycle_phase,
    cocycle_sum,
    direct_sum_lagrangian,
    is_lagrangian,
    kashiwara_form,
    kashiwara_index,
    mu_k,
    random_symplectic_matrix,
    standard_lagrangian,
    tensor_lagrangian,
)

R2 = SymplecticSpace.standard(1)
E1, E2, E12 = [(1, 0)], [(0, 1)], [(1, 1)]
seeds = st.integers(0, 10**9)


def test_worked_triple():
    assert kashiwara_index(R2, E1, E2, E12) == -1
    assert kashiwara_index(R2, E2, E1, E12) == 1
    assert mu_k(GOLDEN, R2, E1, E2, E12) == -2


def test_repeated_lagrangian_gives_zero():
    assert kashiwara_index(R2, E1, E1, E1) == 0
    assert kashiwara_index(R2, E1, E1, E2) == 0


def test_hyperbolic_and_negative_definite_scaling():
    assert mu_k(HYPERBOLIC_PLANE, R2, E1, E2, E12) == 0
    assert mu_k([[4]], R2, E1, E2, E12) == -1
    assert mu_k([[-2, 1], [1, -2]], R2, E1, E2, E12) == 2


def test_bks_phase():
    assert bks_cocycle_phase(-2) == Phase(Fraction(3, 2))
    assert bks_cocycle_phase(8) == Phase(0)


def test_lagrangian_checks():
    R4 = SymplecticSpace.standard(2)
    assert is_lagrangian(R4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    assert not is_lagrangian(R4, [(1, 0, 0, 0), (0, 0, 1, 0)])
    assert not is_lagrangian(R2, [(1, 0), (0, 1)])
    assert not is_lagrangian(R4, [(1, 0, 0, 0), (2, 0, 0, 0)])
    with pytest.raises(DimensionMismatch):
        is_lagrangian(R4, [(1, 0)])
    with pytest.raises(NotLagrangian):
        kashiwara_index(R2, [(1, 0), (0, 1)], E1, E2)


def test_symplectic_space_validation():
    with pytest.raises(DimensionMismatch):
        SymplecticSpace(((0, 1, 0), (-1, 0, 0), (0, 0, 0)))
    with pytest.raises(ValueError):
        SymplecticSpace(((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        SymplecticSpace(((0, 0), (0, 0)))


@given(seeds)
def test_random_symplectic_matrices_preserve_the_form(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 4)
    M = random_symplectic_matrix(m, rng)
    V = SymplecticSpace.standard(m)
    cols = [[M[r][c] for r in range(2 * m)] for c in range(2 * m)]
    for i, j in itertools.combinations(range(2 * m), 2):
        assert V.omega(cols[i], cols[j]) == V.omega(
            [int(k == i) for k in range(2 * m)], [int(k == j) for k in range(2 * m)]
        )


@given(seeds)
def test_index_matches_float_oracle(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    V = SymplecticSpace.standard(m)
    Ls = [rational_lagrangian(m, rng) for _ in range(3)]
    assert kashiwara_index(V, *Ls) == oracles.float_signature(kashiwara_form(V, *Ls))


@given(seeds)
def test_alternating_under_permutations(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    V = SymplecticSpace.standard(m)
    Ls = [rational_lagrangian(m, rng) for _ in range(3)]
    base = kashiwara_index(V, *Ls)
    for perm in itertools.permutations(range(3)):
        inversions = sum(perm[i] > perm[j] for i, j in itertools.combinations(range(3), 2))
        assert kashiwara_index(V, *(Ls[p] for p in perm)) == (-1) ** inversions * base


@given(seeds)
def test_cocycle(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 3)
    V = SymplecticSpace.standard(m)
    assert cocycle_sum(V, *(rational_lagrangian(m, rng) for _ in range(4))) == 0


@given(seeds)
def test_additive_under_direct_sum(seed):
    rng = random.Random(seed)
    a, b = rng.randint(1, 2), rng.randint(1, 2)
    V, W = SymplecticSpace.standard(a), SymplecticSpace.standard(b)
    Ls = [rational_lagrangian(a, rng) for _ in range(3)]
    Ms = [rational_lagrangian(b, rng) for _ in range(3)]
    VW = V.direct_sum(W)
    sums = [direct_sum_lagrangian(L, M, V.dim, W.dim) for L, M in zip(Ls, Ms)]
    assert kashiwara_index(VW, *sums) == kashiwara_index(V, *Ls) + kashiwara_index(W, *Ms)


@given(seeds, st.sampled_from([GOLDEN, ((2,),), ((4,),), HYPERBOLIC_PLANE, ((-2, 1), (1, -4))]))
def test_mu_k_routes_agree(seed, K):
    rng = random.Random(seed)
    m = rng.randint(1, 2)
    V = SymplecticSpace.standard(m)
    Ls = [rational_lagrangian(m, rng) for _ in range(3)]
    r = len(K)
    tensor_route = kashiwara_index(V.tensor(K), *(tensor_lagrangian(L, r) for L in Ls))
    sigma = oracles.float_signature(K)
    assert tensor_route == sigma * kashiwara_index(V, *Ls)
    assert mu_k(K, V, *Ls) == tensor_route


def test_random_triples_are_not_degenerate():
    rng = random.Random(7)
    V = SymplecticSpace.standard(2)
    values = {kashiwara_index(V, *(rational_lagrangian(2, rng) for _ in range(3))) for _ in range(40)}
    assert len(values) >= 3


def test_tensor_lagrangian_is_lagrangian():
    W = R2.tensor(GOLDEN)
    assert is_lagrangian(W, tensor_lagrangian(E12, 2))
    assert is_lagrangian(SymplecticSpace.standard(3), standard_lagrangian(3))
