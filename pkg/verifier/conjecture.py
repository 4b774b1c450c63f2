"""
Sweeps of the main duality L_q(w) = L_q(tau(w)) at A = q^N D.
"""
import logging
from typing import Iterator, List, Optional

from config import Config, load_config
from qint import lq
from shifts import Assignment
from words import Word, enumerate_admissible, format_word, require_admissible, tau

from verifier.report import CONJECTURAL, EXPLORATORY, Check, Report, compare, run_suite

logger = logging.getLogger(__name__)


def duality_check(word: Word, asg: Assignment, config: Config, kind: str = CONJECTURAL,
                  check: str = "duality") -> Check:
    """The comparison of lq(word) and lq(tau(word)) under one assignment."""
    dual = tau(word)
    return Check(
        format_word(word), format_word(dual), asg.N,
        lambda: compare(lq(word, asg), lq(dual, asg), config),
        kind=kind, check=check,
    )


def pair_representatives(k_max: int) -> Iterator[Word]:
    """Admissible words of length <= k_max, one per unordered {w, tau(w)}; tau-fixed words are kept."""
    seen = set()
    for k in range(k_max + 1):
        for word in enumerate_admissible(k):
            if word in seen:
                continue
            seen.add(word)
            seen.add(tau(word))
            yield word


def verify_main(word: Word, N: int, config: Optional[Config] = None) -> Report:
    """
    Compare L_q(w) with L_q(tau(w)) at A = q^N D (dehomogenized to D = 1).

    Raises:
        NotAdmissible: If the word is not admissible.
    """
    config = config or load_config()
    require_admissible(word)
    return run_suite("verify", [duality_check(word, Assignment.dehomogenized(N), config)], config)


def sweep_main(k_max: int, N_max: int, config: Optional[Config] = None, explore: bool = False) -> Report:
    """
    verify_main over every admissible word of length <= k_max and every N <= N_max,
    one case per tau-pair. With ``explore`` the B = C specialization is checked as well.
    """
    config = config or load_config()
    if k_max < 0 or N_max < 0:
        raise ValueError("sweep budgets must be nonnegative")
    checks: List[Check] = []
    for word in pair_representatives(k_max):
        for N in range(N_max + 1):
            checks.append(duality_check(word, Assignment.dehomogenized(N), config))
            if explore:
                checks.append(duality_check(word, Assignment.b_equals_c(N), config, EXPLORATORY, "B=C"))
    return run_suite("sweep", checks, config)
