"""
Series identities around Yamamoto's duality: the duality itself, its L_q form,
the Bradley-Zhao and Schlesinger-Zudilin dualities, the q-integral expression
of multiple q-polylogarithms and the BZ values of f on words in AB and BD.
"""
from fractions import Fraction
from functools import lru_cache
from itertools import cycle, islice
from typing import Optional

from config import Config, load_config
from qint import q_power
from qseries import (
    bz_blocks, bz_dual, bz_word_index, enumerate_bz_indices, enumerate_sz_indices, f_series, li1_aug, li_q,
    li_q_integral, lq_prop34, sz_dual, zeta_bz, zeta_sz,
)
from valuedomain import Monomial
from words import compositions, dual_index, enumerate_aug_indices, format_word, from_ab_bd_blocks

from verifier.report import Check, Report, compare_series, run_suite

Z_COEFFICIENTS = (Fraction(1, 2), Fraction(1, 3), Fraction(2))
MZV_ORDER = 30
INTEGRAL_ORDER = 15


def _index(index) -> str:
    return "(" + ",".join(str(entry) for entry in index) + ")"


def li_arguments(depth: int):
    """
    z_i = c_i q with c_i cycling through Z_COEFFICIENTS; every tail product has positive q-order.
    Constant arguments would have order 0 and do not converge in Q[[q, z]].
    """
    return [Monomial.of(c, q=1) for c in islice(cycle(Z_COEFFICIENTS), depth)]


def suite_section3(weight_max: int = 4, m_q: int = 20, m_z: int = 8, config: Optional[Config] = None,
                   mzv_weight_max: int = 5) -> Report:
    """
    For admissible augmented indices of weight <= weight_max, to orders (m_q, m_z):
    Yamamoto duality, the L_q form of Li^(1), and its z = 0 and z = q specializations.
    BZ and SZ dualities to weight mzv_weight_max at q-order 30, the q-integral form
    of Li_q at q-order 15, and f(w) = zeta_BZ(index(w)) for words in AB, BD.
    """
    config = config or load_config()
    spot = config.spot_check

    @lru_cache(maxsize=None)
    def li1(index, z=None, orders=(m_q, m_z)):
        return li1_aug(index, orders[0], orders[1], z=z, spot_check=spot)

    @lru_cache(maxsize=None)
    def bz(index):
        return zeta_bz(index, MZV_ORDER, spot)

    @lru_cache(maxsize=None)
    def sz(index):
        return zeta_sz(index, MZV_ORDER, spot)

    checks = []
    for index in enumerate_aug_indices(weight_max):
        label = str(list(index))
        dual = dual_index(index)
        checks.append(Check(label, str(list(dual)), None,
                            lambda index=index, dual=dual: compare_series(li1(index), li1(dual)),
                            check="yamamoto-duality"))
        checks.append(Check(label, "theta", None,
                            lambda index=index: compare_series(li1(index), lq_prop34(index, m_q, m_z, spot)),
                            check="Lq-bridge"))
        if index and all(mu == 1 for _, mu in index):
            ks = tuple(k for k, _ in index)
            checks.append(Check(label, _index(ks), None,
                                lambda index=index, ks=ks: compare_series(
                                    li1(index, 0, (m_q, 0)), zeta_bz(ks, m_q, spot)),
                                check="z=0-BZ"))
            checks.append(Check(label, _index(k - 1 for k in ks), None,
                                lambda index=index, ks=ks: compare_series(
                                    li1(index, q_power(1), (m_q, 0)), zeta_sz(tuple(k - 1 for k in ks), m_q, spot)),
                                check="z=q-SZ"))
    for index in enumerate_bz_indices(mzv_weight_max):
        dual = bz_dual(index)
        checks.append(Check(_index(index), _index(dual), None,
                            lambda index=index, dual=dual: compare_series(bz(index), bz(dual)),
                            check="BZ-duality"))
    for index in enumerate_sz_indices(mzv_weight_max):
        dual = sz_dual(index)
        checks.append(Check(_index(index), _index(dual), None,
                            lambda index=index, dual=dual: compare_series(sz(index), sz(dual)),
                            check="SZ-duality"))
    for ks in compositions(weight_max):
        zs = li_arguments(len(ks))
        checks.append(Check(_index(ks), " ".join(str(z) for z in zs), None,
                            lambda ks=ks, zs=zs: compare_series(li_q(ks, zs, INTEGRAL_ORDER, spot_check=spot),
                                                                li_q_integral(ks, zs, INTEGRAL_ORDER, spot_check=spot)),
                            check="li-integral"))
    for index in enumerate_bz_indices(weight_max):
        blocks = bz_blocks(index)
        word = from_ab_bd_blocks([l for l, _ in blocks], [k for _, k in blocks])
        checks.append(Check(format_word(word), _index(bz_word_index(word)), None,
                            lambda word=word: compare_series(f_series(word, m_q, spot),
                                                             zeta_bz(bz_word_index(word), m_q, spot)),
                            check="f-BZ"))
    return run_suite("section3", checks, config)
