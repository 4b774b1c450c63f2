"""
The A = 0, B = C = infinity, D = 1 limit: f(w) = f(tau(w)) and the AD-erasure recursion.
"""
from typing import Optional

from config import Config, load_config
from qseries import erase_ad_terms, f_series
from words import Letter, format_word, tau

from verifier.conjecture import pair_representatives
from verifier.report import Check, Report, compare_series, run_suite


def f_duality_check(word, m_q: int, config: Config) -> Check:
    dual = tau(word)
    return Check(
        format_word(word), format_word(dual), None,
        lambda: compare_series(f_series(word, m_q, config.spot_check), f_series(dual, m_q, config.spot_check)),
        check="f-duality",
    )


def erasure_check(word, position: int, m_q: int, config: Config) -> Check:
    """f(w1 AD w2) = f(w1 AB w2) + f(w1 BD w2) + f(w1 w2)."""
    terms = erase_ad_terms(word, position)

    def run():
        rhs = f_series(terms[0], m_q, config.spot_check)
        for term in terms[1:]:
            rhs = rhs + f_series(term, m_q, config.spot_check)
        return compare_series(f_series(word, m_q, config.spot_check), rhs)

    return Check(format_word(word), " + ".join(format_word(t) or "()" for t in terms), None, run,
                 check="AD-erasure")


def suite_43(k_max: int, m_q: int, config: Optional[Config] = None) -> Report:
    """
    f_series(w) = f_series(tau(w)) to q-order m_q for admissible words of length
    <= k_max, and the erasure recursion at every e_AD of every such word.
    """
    config = config or load_config()
    checks = []
    for word in pair_representatives(k_max):
        checks.append(f_duality_check(word, m_q, config))
        for candidate in ([word] if tau(word) == word else [word, tau(word)]):
            for position, letter in enumerate(candidate):
                if letter is Letter.AD:
                    checks.append(erasure_check(candidate, position, m_q, config))
    return run_suite("s43", checks, config)
