"""
Floating-point spot check of the q -> 1 limit.

With q_N = (A/D)^(1/N) the scaled sum (1 - q_N)^k L_q(w) tends to the real
iterated integral of the forms dt/(t - u) - dt/(t - v) from A to D; the latter
is computed by nested adaptive quadrature.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import mpmath

from config import CLASSICAL_DUALITY_TOLERANCE, CLASSICAL_STEPS, CLASSICAL_TOLERANCE, Config, load_config
from errors import NumericalInstability, PoleAtPoint
from qint import lq
from shifts import Assignment
from valuedomain import Monomial
from words import Letter, Mark, Word, format_word, require_admissible, tau

from verifier.report import Check, Report, compare_float, run_suite

logger = logging.getLogger(__name__)

WORKING_DPS = 30
QUAD_ERROR_LIMIT = mpmath.mpf("1e-12")
DEFAULT_REALS = (1, -1, 3, 2)
DEFAULT_WORDS = (
    (Letter.BC,),
    (Letter.BD, Letter.AB),
    (Letter.CD, Letter.AC),
)


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


class FloatDomain:
    """Evaluates at a real point in mpmath floating point."""
    name = "float"

    def __init__(self, point: dict):
        self.point = {name: _to_mpf(value) for name, value in point.items()}

    def one(self):
        return mpmath.mpf(1)

    def zero(self):
        return mpmath.mpf(0)

    def constant(self, c):
        return _to_mpf(c)

    def monomial(self, m: Monomial):
        return m.evaluate(self.point, _to_mpf)

    def geometric(self, m: Monomial):
        ratio = self.monomial(m)
        if ratio == 1:
            raise PoleAtPoint(f"1 - {m} vanishes")
        return 1 / (1 - ratio)


@dataclass
class ClassicalResult:
    q_sum: float
    integral: float
    dual_integral: float

    @property
    def discrepancy(self) -> float:
        return abs(self.q_sum - self.integral)

    @property
    def duality_gap(self) -> float:
        return abs(self.integral - self.dual_integral)


def _validate(reals: Sequence) -> Dict[Mark, mpmath.mpf]:
    a, b, c, d = (_to_mpf(Fraction(x)) for x in reals)
    if not a < d:
        raise ValueError("the classical check needs A < D")
    if a <= b <= d or a <= c <= d:
        raise ValueError("B and C must lie outside [A, D]")
    return {Mark.A: a, Mark.B: b, Mark.C: c, Mark.D: d}


def classical_integral(word: Word, values: Dict[Mark, mpmath.mpf]) -> mpmath.mpf:
    """The nested integral over A < t_1 < ... < t_k < D of prod (1/(t_j - u_j) - 1/(t_j - v_j))."""
    forms = [(values[letter.u], values[letter.v]) for letter in word]
    lower = values[Mark.A]

    def nested(j: int, upper):
        if j == 0:
            return mpmath.mpf(1)
        u, v = forms[j - 1]
        return mpmath.quad(lambda t: (1 / (t - u) - 1 / (t - v)) * nested(j - 1, t), [lower, upper])

    if not forms:
        return mpmath.mpf(1)
    u, v = forms[-1]
    value, error = mpmath.quad(lambda t: (1 / (t - u) - 1 / (t - v)) * nested(len(forms) - 1, t),
                               [lower, values[Mark.D]], error=True)
    if not mpmath.isfinite(value) or error > QUAD_ERROR_LIMIT:
        raise NumericalInstability(f"quadrature for {format_word(word)} did not converge (error {error})")
    return value


def scaled_q_sum(word: Word, values: Dict[Mark, mpmath.mpf], n_steps: int) -> mpmath.mpf:
    """(1 - q_N)^k L_q(w) at A = q_N^N D with q_N = (A/D)^(1/N)."""
    q = mpmath.power(values[Mark.A] / values[Mark.D], mpmath.mpf(1) / n_steps)
    domain = FloatDomain({"q": q, "B": values[Mark.B], "C": values[Mark.C], "D": values[Mark.D]})
    return (1 - q) ** len(word) * lq(word, Assignment.generic(n_steps), domain)


def classical_limit_check(word: Word, reals: Sequence = DEFAULT_REALS,
                          n_steps: int = CLASSICAL_STEPS) -> ClassicalResult:
    """
    Compare the scaled q-sum with the classical integral, and the classical
    integral of w with that of tau(w).

    Raises:
        NotAdmissible: If the word is not admissible.
        NumericalInstability: If quadrature fails to converge.
    """
    require_admissible(word)
    with mpmath.workdps(WORKING_DPS):
        values = _validate(reals)
        integral = classical_integral(word, values)
        dual_integral = classical_integral(tau(word), values)
        q_sum = scaled_q_sum(word, values, n_steps)
    logger.debug("classical check %s: q-sum %s, integral %s", format_word(word), q_sum, integral)
    return ClassicalResult(float(q_sum), float(integral), float(dual_integral))


def suite_classical(config: Optional[Config] = None, words: Sequence[Word] = DEFAULT_WORDS,
                    reals: Tuple = DEFAULT_REALS, n_steps: int = CLASSICAL_STEPS) -> Report:
    config = config or load_config()
    checks = []
    for word in words:
        label, dual_label = format_word(word), format_word(tau(word))
        results = {}

        def result(word=word):
            if word not in results:
                results[word] = classical_limit_check(word, reals, n_steps)
            return results[word]

        checks.append(Check(label, dual_label, n_steps,
                            lambda result=result: compare_float(result().q_sum, result().integral, CLASSICAL_TOLERANCE),
                            check="q-limit"))
        checks.append(Check(label, dual_label, None,
                            lambda result=result: compare_float(result().integral, result().dual_integral,
                                                                CLASSICAL_DUALITY_TOLERANCE),
                            check="classical-duality"))
    return run_suite("classical", checks, config)
