"""
Properties of finite iterated q-integrals: the q-difference formula, its
zero-insertion corollary, and the prefix-sum evaluator against direct
chain enumeration. Parameters are random monomials c * q^e with distinct
coefficients c >= 2, so no parameter ever meets a chain point of 1.
"""
import random
from typing import List, Optional

from config import Config, load_config
from qint import Bracket, Single, iq, iq_naive
from shifts import ZERO
from valuedomain import LAZY, Monomial, ONE_MONOMIAL

from verifier.report import Check, Report, compare, run_suite

LOWER = ONE_MONOMIAL


def _random_params(rng: random.Random, count: int) -> List[Monomial]:
    return [Monomial.of(c, q=rng.randint(-2, 2)) for c in rng.sample(range(2, 10), count)]


def _singles(params) -> List[Single]:
    return [Single(p) for p in params]


def _label(params) -> str:
    return " ".join(str(p) for p in params)


def difference_formula_check(params: List[Monomial], h: int, N: int, config: Config) -> Check:
    """
    I(a_0; a_1..a_k; a_k+1) - I(a_0; a_1..a_h, a_h+1 q..a_k q; a_k+1 q) against the
    one or two omitted-parameter integrals, with a_0 = 1 and a_k+1 = q^-N (N >= 1).
    """
    k = len(params)
    marks = [LOWER] + list(params) + [LOWER.shift_q(-N)]

    def run():
        shifted = list(params[:h]) + [p.shift_q(1) for p in params[h:]]
        lhs = iq(LOWER, _singles(params), N) - iq(LOWER, _singles(shifted), N - 1)
        rhs = LAZY.zero()
        if h < k:
            rest = params[:h] + params[h + 1:]
            rhs = rhs + LAZY.geometric(marks[h + 1] / marks[h]) * iq(LOWER, _singles(rest), N)
        if h > 0:
            rest = params[:h - 1] + params[h:]
            rhs = rhs + LAZY.geometric(marks[h] / marks[h + 1]) * iq(LOWER, _singles(rest), N)
        return compare(lhs, rhs, config)

    return Check(_label(params), f"h={h}", N, run, check="q-difference")


def zero_insertion_check(params: List[Monomial], h: int, N: int, config: Config) -> Check:
    """Inserting 0 after a_h: the difference of the shifted integrals is I(a_0; a_1..a_k; a_k+1)."""
    def run():
        plain = _singles(params[:h]) + [Single(ZERO)]
        lhs = iq(LOWER, plain + _singles(params[h:]), N)
        lhs = lhs - iq(LOWER, plain + _singles(p.shift_q(1) for p in params[h:]), N - 1)
        return compare(lhs, iq(LOWER, _singles(params), N), config)

    return Check(_label(params), f"h={h}", N, run, check="zero-insertion")


def _random_factor(rng: random.Random):
    def param():
        return Monomial.of(rng.randint(2, 9), q=rng.randint(-2, 2), B=rng.choice((0, 1)))
    roll = rng.random()
    if roll < 0.1:
        return Single(ZERO)
    if roll < 0.5:
        return Single(param())
    return Bracket(param(), param())


def chain_enumeration_check(factors, N: int, config: Config) -> Check:
    """The prefix-sum evaluator agrees with enumerating every chain."""
    return Check(" ".join(str(f) for f in factors), "naive", N,
                 lambda: compare(iq(LOWER, factors, N), iq_naive(LOWER, factors, N), config),
                 check="dp-vs-naive")


def suite_section2(cases: int = 100, k_max: int = 3, N_max: int = 3, config: Optional[Config] = None) -> Report:
    """
    ``cases`` random instances each of the q-difference formula (every h in 0..k),
    the zero-insertion corollary and the evaluator cross-check, with k <= k_max
    and 1 <= N <= N_max.
    """
    config = config or load_config()
    rng = random.Random(config.seed)
    checks = []
    for _ in range(cases):
        params = _random_params(rng, rng.randint(1, k_max))
        N = rng.randint(1, N_max)
        checks.append(difference_formula_check(params, rng.randint(0, len(params)), N, config))
    for _ in range(cases):
        params = _random_params(rng, rng.randint(0, k_max))
        checks.append(zero_insertion_check(params, rng.randint(0, len(params)), rng.randint(1, N_max), config))
    for _ in range(cases):
        factors = [_random_factor(rng) for _ in range(rng.randint(0, k_max))]
        checks.append(chain_enumeration_check(factors, rng.randint(0, N_max), config))
    return run_suite("section2", checks, config)
