"""
The A = D case: duality, the single-chain product form and the telescoping of Phi.
"""
from typing import Optional

from config import Config, load_config
from qint import lq, lq_AeqD_dual_product, lq_AeqD_product, omega, omega_dual, phi
from shifts import Assignment
from words import enumerate_admissible, format_word, tau

from verifier.conjecture import duality_check
from verifier.report import PROVED, Check, Report, compare, run_suite


def product_checks(word, config: Config):
    """prod omega_j = L_q(w) and prod omega'_j = L_q(tau(w)), both at A = D."""
    asg = Assignment.a_equals_d()
    dual = tau(word)
    label, dual_label = format_word(word), format_word(dual)
    return [
        Check(label, dual_label, 0, lambda: compare(lq_AeqD_product(word), lq(word, asg), config),
              check="omega-product"),
        Check(label, dual_label, 0, lambda: compare(lq_AeqD_dual_product(word), lq(dual, asg), config),
              check="omega-dual-product"),
    ]


def phi_checks(word, config: Config):
    """Phi(j) / Phi(j-1) = omega_j / omega'_(k+1-j) for every j, and Phi(0) = Phi(k) = 1."""
    k = len(word)
    label, dual_label = format_word(word), format_word(tau(word))
    checks = [
        Check(label, dual_label, 0, lambda: compare(phi(word, 0), 1, config), check="phi-start"),
        Check(label, dual_label, 0, lambda: compare(phi(word, k), 1, config), check="phi-end"),
    ]
    for j in range(1, k + 1):
        def run(j=j):
            return compare(phi(word, j) * omega_dual(word, k + 1 - j), phi(word, j - 1) * omega(word, j), config)
        checks.append(Check(label, dual_label, 0, run, check=f"phi-step-{j}"))
    return checks


def suite_44(k_max: int, config: Optional[Config] = None) -> Report:
    """For every admissible w of length <= k_max: L_q(w) = L_q(tau(w)) at A = D, and the omega/Phi consistency."""
    config = config or load_config()
    checks = []
    for k in range(k_max + 1):
        for word in enumerate_admissible(k):
            checks.append(duality_check(word, Assignment.a_equals_d(), config, kind=PROVED, check="A=D"))
            if word:
                checks.extend(product_checks(word, config))
                checks.extend(phi_checks(word, config))
    return run_suite("s44", checks, config)
