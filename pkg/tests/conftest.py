import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from toralcs.samples import random_k_matrix  # noqa: E402

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

GOLDEN = ((2, 1), (1, 2))

_ACCEPTANCE = pytest.StashKey[list]()


@st.composite
def k_matrices(draw, max_n=3, max_det=60):
    """Valid K-matrices drawn through a seeded generator."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_k_matrix(random.Random(seed), max_n=max_n, max_det=max_det)


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)


def rational_lagrangian(m, rng):
    """A Lagrangian of the standard 2m-space given by a rational, non-integral basis.

    The integral symplectic image of the standard Lagrangian is re-expressed in
    a random rational basis, so vectors carry genuine denominators.
    """
    from fractions import Fraction

    from toralcs.exactlin import rank
    from toralcs.maslov import random_lagrangian

    L = random_lagrangian(m, rng, steps=rng.randint(2, 8))
    while True:
        A = [[Fraction(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(m)] for _ in range(m)]
        if rank(A) == m:
            break
    return tuple(tuple(sum(A[i][k] * L[k][c] for k in range(m)) for c in range(2 * m)) for i in range(m))
