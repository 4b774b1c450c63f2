"""
The B = C = infinity case: parity of f_{k,l}, the Z-functional duality, the
g-recursions, and the bridges between the six-letter and x, y, z formulations.
"""
import itertools
from typing import Optional

from config import Config, load_config
from qint import R, f_kl, g_klmn, lq, z_functional
from shifts import Assignment
from valuedomain import LAZY, invert_q
from words import (
    CONTAINS_BC, collapse, enumerate_admissible, enumerate_h0_words, format_word, tau,
)

from verifier.report import CONJECTURAL, Check, Report, compare, run_suite


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _label(*args) -> str:
    return ",".join(str(a) for a in args)


# f and g identities
#---------------------------------------------------------------------------------
def parity_check(k: int, l: int, N: int, config: Config) -> Check:
    """f_{k,l}(N) lies in Q(q)_{k+l}."""
    def run():
        value = f_kl(k, l, N)
        return compare(invert_q(value), _sign(k + l) * value, config)
    return Check(f"f[{_label(k, l)}]", f"parity {(k + l) % 2}", N, run, check="f-parity")


def symmetry_check(k: int, l: int, N: int, config: Config) -> Check:
    """f_{k,l}(N) = (-1)^(k+l) f_{l,k}(N) at q -> 1/q."""
    def run():
        return compare(f_kl(k, l, N), _sign(k + l) * invert_q(f_kl(l, k, N)), config)
    return Check(f"f[{_label(k, l)}]", f"f[{_label(l, k)}]", N, run, check="f-symmetry")


def recursion_42(k, l, m, n, N, config: Config) -> Check:
    """g_{k,l,m,n}(N) - g_{k,l,m,n+1}(N-1) = R_{-m-N} g_{k-1,l,m,n}(N)."""
    def run():
        lhs = g_klmn(k, l, m, n, N) - g_klmn(k, l, m, n + 1, N - 1)
        return compare(lhs, R(-m - N) * g_klmn(k - 1, l, m, n, N), config)
    return Check(f"g[{_label(k, l, m, n)}]", "shift n", N, run, check="g-recursion-n")


def recursion_43(k, l, m, n, N, config: Config) -> Check:
    """g_{k,l,m,n}(N) - g_{k,l,m+1,n+1}(N-1) = R_{-m-n-N} g_{k-1,l,m,n}(N) + R_{m+n+N} g_{k,l-1,m,n}(N)."""
    def run():
        lhs = g_klmn(k, l, m, n, N) - g_klmn(k, l, m + 1, n + 1, N - 1)
        rhs = R(-m - n - N) * g_klmn(k - 1, l, m, n, N) + R(m + n + N) * g_klmn(k, l - 1, m, n, N)
        return compare(lhs, rhs, config)
    return Check(f"g[{_label(k, l, m, n)}]", "shift m,n", N, run, check="g-recursion-mn")


def recursion_44(k, l, m, n, N, config: Config) -> Check:
    """g_{k,l,m,n}(N) - g_{k,l,m+1,n}(N-1) = R_{n+N} g_{k,l-1,m,n}(N)."""
    def run():
        lhs = g_klmn(k, l, m, n, N) - g_klmn(k, l, m + 1, n, N - 1)
        return compare(lhs, R(n + N) * g_klmn(k, l - 1, m, n, N), config)
    return Check(f"g[{_label(k, l, m, n)}]", "shift m", N, run, check="g-recursion-m")


def f_recursion_check(k: int, l: int, N: int, config: Config) -> Check:
    """The first-order difference of f_{k,l} in N (k >= 1, l >= 2, N >= 1)."""
    def run():
        lhs = f_kl(k, l, N - 1) - f_kl(k, l, N)
        if k == 1:
            return compare(lhs, (R(l + N) - R(1 + N)) * f_kl(1, l - 1, N), config)
        top = R(k + l - 1 + N)
        rhs = (top - R(k + N)) * f_kl(k, l - 1, N)
        rhs = rhs + (R(-k - l + 1 - N) - R(-l - N)) * f_kl(k - 1, l, N)
        even = (R(k + N) - top) * (R(l + N) - top) + top * (LAZY.one() - top)
        rhs = rhs + even * f_kl(k - 1, l - 1, N + 1)
        return compare(lhs, rhs, config)
    return Check(f"f[{_label(k, l)}]", "difference", N, run, check="f-recursion")


def r_identity_checks(m: int, m_prime: int, config: Config):
    """R_m = 1 - R_{-m}; R_m - R_{m'} is odd; R_m (1 - R_m) is even."""
    label = f"R[{_label(m, m_prime)}]"
    difference = R(m) - R(m_prime)
    product = R(m) * (LAZY.one() - R(m))
    return [
        Check(label, "1 - R[-m]", None, lambda: compare(R(m), LAZY.one() - R(-m), config), check="R-reflection"),
        Check(label, "odd", None, lambda: compare(invert_q(difference), -difference, config), check="R-odd"),
        Check(label, "even", None, lambda: compare(invert_q(product), product, config), check="R-even"),
    ]

#---------------------------------------------------------------------------------

# x, y, z formulation
#---------------------------------------------------------------------------------
def z_duality_check(word, N: int, config: Config) -> Check:
    """Z_{N,1/q}(w) = (-1)^k Z_{N,q}(w)."""
    def run():
        return compare(z_functional(word, N, invert_q=True), _sign(len(word)) * z_functional(word, N), config)
    return Check(format_word(word), format_word(word), N, run, kind=CONJECTURAL, check="Z-duality")


def bridge_checks(word, N: int, config: Config):
    """Z_{N,q}(collapse(w)) = L_q(w) and L_q(tau(w)) = (-1)^k L_{1/q}(w), all at B = C = infinity, D = 1."""
    asg = Assignment.b_c_infinite(N)
    dual = tau(word)
    label, dual_label = format_word(word), format_word(dual)
    return [
        Check(label, format_word(collapse(word)), N,
              lambda: compare(z_functional(collapse(word), N), lq(word, asg), config), check="Z-bridge"),
        Check(label, dual_label, N,
              lambda: compare(lq(dual, asg), _sign(len(word)) * invert_q(lq(word, asg)), config),
              check="q-inversion"),
    ]


def bridge_words(length_max: int):
    """Admissible words without e_BC."""
    for k in range(length_max + 1):
        for word in enumerate_admissible(k):
            if collapse(word) is not CONTAINS_BC:
                yield word

#---------------------------------------------------------------------------------


def suite_42(k_max: int, l_max: int, N_max: int, word_len_max: int, config: Optional[Config] = None,
             g_max: int = 3, bridge_len_max: int = 4) -> Report:
    """
    (i) parity of f_{k,l}(N) for 1 <= k, l and k + l <= k_max + l_max;
    (ii) Z-duality on y h x words of length <= word_len_max (conjectural);
    (iii) the three g-recursions for arguments <= g_max and 1 <= N <= g_max;
    (iv) symmetry and (v) the N-difference of f_{k,l};
    plus the R identities and the bridges for words of length <= bridge_len_max.
    """
    config = config or load_config()
    checks = []
    total = k_max + l_max
    pairs = [(k, l) for k in range(1, total) for l in range(1, total) if k + l <= total]
    for (k, l), N in itertools.product(pairs, range(N_max + 1)):
        checks.append(parity_check(k, l, N, config))
        checks.append(symmetry_check(k, l, N, config))
        if l >= 2 and N >= 1:
            checks.append(f_recursion_check(k, l, N, config))
    for word in enumerate_h0_words(word_len_max):
        for N in range(N_max + 1):
            checks.append(z_duality_check(word, N, config))
    bounds = range(1, g_max + 1)
    for k, l, m, n, N in itertools.product(range(g_max + 1), bounds, bounds, bounds, bounds):
        if k:
            checks.append(recursion_42(k, l, m, n, N, config))
            checks.append(recursion_43(k, l, m, n, N, config))
        checks.append(recursion_44(k, l, m, n, N, config))
    for m, m_prime in itertools.product((-2, -1, 1, 2, 3), repeat=2):
        checks.extend(r_identity_checks(m, m_prime, config))
    for word in bridge_words(bridge_len_max):
        for N in range(N_max + 1):
            checks.extend(bridge_checks(word, N, config))
    return run_suite("s42", checks, config)
