"""Built-in regression suite: the worked rank-two example plus reduced property checks."""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import find_isomorphism, measurable_equivalent, reconstruct, verify_conjugation
from .disc import DiscGroup, gauss_milgram
from .exactlin import (
    HYPERBOLIC_PLANE,
    block_diagonal,
    e8_cartan,
    matmul,
    smith_normal_form,
    validate_k_matrix,
)
from .maslov import (
    SymplecticSpace,
    cocycle_sum,
    kashiwara_index,
    mu_k,
    random_lagrangian,
)
from .modular import (
    HalfPowerScalar,
    cylinder_factor,
    modular_data,
    state_space_dimension,
    verify_modular_relations,
    verify_s_unitary,
)
from .samples import random_congruent, random_k_corpus
from .tqft import BettiData, exponent_identity_check, m_closed, m_exponent, mapping_torus_gluing, z_s3

GOLDEN_K = ((2, 1), (1, 2))


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    total: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def record(self, label, check):
        self.total += 1
        try:
            good = bool(check())
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            good = False
            label = f"{label} ({type(exc).__name__}: {exc})"
        if good:
            self.passed += 1
        else:
            self.failures.append(label)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.passed}/{self.total} ({self.seconds:.2f}s)"


def _golden(s: SuiteResult):
    K = validate_k_matrix(GOLDEN_K)
    G = DiscGroup(K)
    md = modular_data(G, 1)
    s.record("det = 3", lambda: K.det == 3)
    s.record("G = Z/3", lambda: G.invariant_factors == (3,))
    s.record("q = (1, w, w)", lambda: G.q_table().to_strings() == ["0/1", "2/3", "2/3"])
    s.record(
        "Omega = [[1,1,1],[1,w^2,w],[1,w,w^2]]",
        lambda: G.omega_table().to_strings()
        == [["0/1", "0/1", "0/1"], ["0/1", "4/3", "2/3"], ["0/1", "2/3", "4/3"]],
    )
    s.record("T = diag(1, w, w)", lambda: md.t.to_strings() == ["0/1", "2/3", "2/3"])
    s.record("S norm = 3^(-1/2)", lambda: md.norm == HalfPowerScalar(3, -1))
    s.record("dim = 3^g, g <= 5", lambda: all(state_space_dimension(G, g) == 3**g for g in range(6)))
    s.record("cylinder factor 3^(1/2)", lambda: cylinder_factor(G, 1) == HalfPowerScalar(3, 1))
    s.record("Z(S^3) = 3^(-1/2)", lambda: z_s3(K) == HalfPowerScalar(3, -1))
    s.record("m_H = 0", lambda: m_exponent(BettiData.handlebody(1)) == 0)
    s.record("m_S3 = -1/2", lambda: m_closed(0) == Fraction(-1, 2))
    s.record("c = 2 mod 8 by Gauss-Milgram", lambda: gauss_milgram(G).verified and K.sigma % 8 == 2)
    s.record("S unitary", lambda: verify_s_unitary(md))
    s.record("modular relations", lambda: all(vars(verify_modular_relations(md, 2)).values()))

    def recon():
        th = reconstruct(md.omega, md.norm, md.t)
        return th.invariant_factors() == (3,) and th.q_table.to_strings() == ["0/1", "2/3", "2/3"]

    s.record("reconstruct -> Z/3", recon)
    V = SymplecticSpace.standard(1)
    triple = ([(1, 0)], [(0, 1)], [(1, 1)])
    s.record("mu(R^2 triple) = -1", lambda: kashiwara_index(V, *triple) == -1)
    s.record("mu_K = -2", lambda: mu_k(K, V, *triple) == -2)
    s.record("K ~ [[2,-1],[-1,2]]", lambda: measurable_equivalent(K, [[2, -1], [-1, 2]]).equivalent)
    s.record(
        "K !~ -K",
        lambda: measurable_equivalent(K, -K).reason == "CentralChargeMismatch",
    )


def _exactlin(s: SuiteResult, corpus):
    for i, K in enumerate(corpus):
        def snf_ok(K=K):
            d = smith_normal_form(K.entries)
            diag = d.diagonal
            return matmul(matmul(d.U, d.D), d.V) == K.entries and all(
                diag[j + 1] % diag[j] == 0 for j in range(len(diag) - 1)
            )

        s.record(f"SNF #{i}", snf_ok)
        s.record(f"|G| = |det K| #{i}", lambda K=K: DiscGroup(K).order == abs(K.det))


def _well_defined(s: SuiteResult, corpus, rng):
    for i, K in enumerate(corpus):
        G = DiscGroup(K)

        def shift_ok(K=K, G=G):
            x = [rng.randint(-9, 9) for _ in range(K.n)]
            lam = [rng.randint(-9, 9) for _ in range(K.n)]
            y = [a + sum(K.entries[r][c] * lam[c] for c in range(K.n)) for r, a in enumerate(x)]
            u, v = G.project(x), G.project(y)
            return u == v and G.q_form(u) == G.q_form(G.project(G.lift(u)))

        s.record(f"lift shift #{i}", shift_ok)


def _unitarity(s: SuiteResult, corpus):
    for i, K in enumerate(corpus):
        G = DiscGroup(K)
        s.record(f"S unitary g=1 #{i}", lambda G=G: verify_s_unitary(modular_data(G, 1)))
        if G.order <= 6:
            s.record(f"S unitary g=2 #{i}", lambda G=G: verify_s_unitary(modular_data(G, 2)))


def _gauss(s: SuiteResult, corpus):
    for i, K in enumerate(corpus):
        s.record(f"Gauss-Milgram #{i}", lambda K=K: gauss_milgram(DiscGroup(K)).verified)


def _roundtrip(s: SuiteResult, corpus):
    for i, K in enumerate(corpus):
        def rt(K=K):
            G = DiscGroup(K)
            md = modular_data(G, 1)
            phi = find_isomorphism(G, reconstruct(md.omega, md.norm, md.t))
            return phi is not None and verify_conjugation(phi)

        s.record(f"round trip #{i}", rt)


def _equivalence(s: SuiteResult, corpus, rng):
    for i, K in enumerate(corpus):
        s.record(f"K ~ P^T K P #{i}", lambda K=K: measurable_equivalent(K, random_congruent(K, rng)).equivalent)
    K = corpus[0]
    s.record("K ~ K + U", lambda: measurable_equivalent(K, block_diagonal(K.entries, HYPERBOLIC_PLANE)).equivalent)
    s.record("K ~ K + E8", lambda: measurable_equivalent(K, block_diagonal(K.entries, e8_cartan())).equivalent)


def _maslov(s: SuiteResult, rng, count):
    for i in range(count):
        m = rng.randint(1, 3)
        V = SymplecticSpace.standard(m)
        L = [random_lagrangian(m, rng) for _ in range(4)]
        s.record(f"cocycle #{i}", lambda V=V, L=L: cocycle_sum(V, *L) == 0)
        s.record(
            f"antisymmetry #{i}",
            lambda V=V, L=L: kashiwara_index(V, L[1], L[0], L[2]) == -kashiwara_index(V, *L[:3]),
        )


def _exponents(s: SuiteResult):
    for g in range(4):
        s.record(f"m(Sigma_{g} x I) = g/2", lambda g=g: m_exponent(BettiData.cylinder(g)) == Fraction(g, 2))
        s.record(f"exponent identity g={g}", lambda g=g: exponent_identity_check(mapping_torus_gluing(g)))


def run_selftest(seed: int = 0, corpus_size: int = 24) -> list:
    """Run every suite; returns one :class:`SuiteResult` per suite."""
    rng = random.Random(seed)
    corpus = random_k_corpus(seed, corpus_size, max_n=3, max_det=60)
    suites = [
        ("golden", lambda s: _golden(s)),
        ("exactlin", lambda s: _exactlin(s, corpus)),
        ("well-definedness", lambda s: _well_defined(s, corpus, rng)),
        ("unitarity", lambda s: _unitarity(s, corpus)),
        ("gauss-milgram", lambda s: _gauss(s, corpus)),
        ("reconstruction", lambda s: _roundtrip(s, corpus)),
        ("equivalence", lambda s: _equivalence(s, corpus, rng)),
        ("maslov", lambda s: _maslov(s, rng, corpus_size)),
        ("exponents", lambda s: _exponents(s)),
    ]
    results = []
    for name, body in suites:
        res = SuiteResult(name)
        start = time.perf_counter()
        body(res)
        res.seconds = time.perf_counter() - start
        results.append(res)
    return results
