"""
The AD = BC q^m(w) specialization and the inversion lemma behind it.
"""
import random
from typing import Optional

from config import Config, load_config
from qint import Bracket, inversion_transform, iq
from shifts import Assignment
from valuedomain import Monomial
from words import enumerate_admissible, m_of

from verifier.conjecture import duality_check
from verifier.report import PROVED, Check, Report, compare, run_suite


def _random_bracket(rng: random.Random) -> Bracket:
    def param():
        return Monomial.of(rng.randint(2, 9), q=rng.randint(-3, 3), B=rng.choice((0, 1)))
    return Bracket(param(), param())


def inversion_check(factors, N: int, config: Config) -> Check:
    """iq(1; factors; q^-N) against iq over the inverted brackets."""
    one = Monomial.of()
    label = " ".join(str(f) for f in factors)
    return Check(
        label, " ".join(str(f) for f in inversion_transform(factors, one, N)), N,
        lambda: compare(iq(one, factors, N), iq(one, inversion_transform(factors, one, N), N), config),
        check="inversion",
    )


def suite_41(k_max: int, N_max: int, config: Optional[Config] = None, inversion_cases: int = 20) -> Report:
    """
    L_q(w) = L_q(tau(w)) with C = q^(N - m(w)) D^2 / B for every admissible w of
    length <= k_max and N <= N_max, plus random instances of the inversion lemma.
    """
    config = config or load_config()
    checks = []
    for k in range(k_max + 1):
        for word in enumerate_admissible(k):
            for N in range(N_max + 1):
                checks.append(duality_check(word, Assignment.ad_equals_bc(N, m_of(word)), config,
                                            kind=PROVED, check="AD=BCq^m"))
    rng = random.Random(config.seed)
    for _ in range(inversion_cases):
        factors = [_random_bracket(rng) for _ in range(rng.randint(1, 2))]
        checks.append(inversion_check(factors, rng.randint(0, 2), config))
    return run_suite("s41", checks, config)
