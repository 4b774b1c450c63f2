"""
Power-series evaluators in Q[[q, z]].

Infinite sums (multiple q-polylogarithms, iterated q-integrals with lower limit 0,
Yamamoto's Li_q^(1), the Bradley-Zhao and Schlesinger-Zudilin q-MZVs) are
evaluated with an adaptive cutoff: the summation bound starts at M_q + M_z + 4
and doubles until two consecutive rounds agree at the target truncation.
"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple, Union

from config import CUTOFF_BUDGET
from errors import NonconvergentSpec, PoleDetected, StabilizationFailure
from qint import Bracket, FactorSpec, Single, q_power
from shifts import INFINITY, ZERO, Assignment, Param, Special, format_param, shifted_pairs
from valuedomain import BiSeries, Monomial, ONE_MONOMIAL
from words import (
    AugIndex, Letter, LinComb, Word, aug_to_word, compositions, format_word, require_admissible, theta,
)

logger = logging.getLogger(__name__)

Z_VARIABLE = Monomial.of(z=1)


# adaptive cutoff
#---------------------------------------------------------------------------------
def stabilize(compute: Callable[[int], BiSeries], m_q: int, m_z: int, label: str,
              spot_check: bool = False) -> BiSeries:
    """
    Run ``compute(cutoff)`` with doubling cutoffs until two rounds agree.

    Raises:
        StabilizationFailure: If the cutoff passes CUTOFF_BUDGET first, or the
            spot check at a further doubled cutoff disagrees.
    """
    cutoff = m_q + m_z + 4
    previous = compute(cutoff)
    while True:
        cutoff *= 2
        if cutoff > CUTOFF_BUDGET:
            raise StabilizationFailure(f"{label}: no two agreeing rounds below cutoff {CUTOFF_BUDGET}")
        current = compute(cutoff)
        if current == previous:
            logger.debug("%s stabilized at cutoff %d", label, cutoff)
            break
        logger.debug("%s changed at cutoff %d, doubling", label, cutoff)
        previous = current
    if spot_check and compute(cutoff * 2) != current:
        raise StabilizationFailure(f"{label}: spot check at cutoff {cutoff * 2} disagrees")
    return current


def _power_of_r(series: BiSeries, n: int, k: int) -> BiSeries:
    """series / (1 - q^n)^k for n >= 1."""
    ratio = q_power(n)
    for _ in range(k):
        series = series.div_one_minus(ratio)
    return series

#---------------------------------------------------------------------------------

# x = 0 iterated q-integrals
#---------------------------------------------------------------------------------
def apply_kernel(series: BiSeries, t: Monomial, u: Param) -> BiSeries:
    """
    Multiply by t/(t - u), expanded in u/t or t/u, whichever has positive order.

    Raises:
        PoleDetected: If u/t is identically 1.
        NonconvergentSpec: If neither ratio has positive order and u/t is not constant.
    """
    if u is ZERO:
        return series
    if u is INFINITY or series.is_zero():
        return BiSeries.zero(series.m_q, series.m_z)
    ratio = u / t
    if ratio.positive_order():
        return series.div_one_minus(ratio)
    inverse = t / u
    if inverse.positive_order():
        return -series.shift(inverse).div_one_minus(inverse)
    if ratio.is_constant:
        if ratio.coeff == 1:
            raise PoleDetected(f"parameter {u} coincides with chain point {t}")
        return series.scale(1 / (1 - ratio.coeff))
    raise NonconvergentSpec(f"t/(t - {u}) has no expansion in Q[[q, z]] at t = {t}")


def apply_factor(series: BiSeries, spec: FactorSpec, t: Monomial) -> BiSeries:
    if isinstance(spec, Single):
        return apply_kernel(series, t, spec.u)
    return apply_kernel(series, t, spec.u) - apply_kernel(series, t, spec.v)


def iq_zero_series(factors: Sequence[FactorSpec], m_q: int, m_z: int = 0, upper: Monomial = ONE_MONOMIAL,
                   spot_check: bool = False) -> BiSeries:
    """
    I_q(0; f_1, ..., f_k; y) as a truncated series, summing over chains
    t_j = y q^(m_j) with m_1 >= m_2 >= ... >= m_k >= 0.
    """
    one = BiSeries.one(m_q, m_z)
    if not factors:
        return one

    def compute(cutoff: int) -> BiSeries:
        points = [upper.shift_q(m) for m in range(cutoff + 1)]
        row = [apply_factor(one, factors[0], points[m]) for m in range(cutoff + 1)]
        for spec in factors[1:]:
            suffix = BiSeries.zero(m_q, m_z)
            new_row = [None] * (cutoff + 1)
            for m in range(cutoff, -1, -1):
                suffix = suffix + row[m]
                new_row[m] = apply_factor(suffix, spec, points[m])
            row = new_row
        total = BiSeries.zero(m_q, m_z)
        for value in row:
            total = total + value
        return total

    label = "I_q(0; " + ", ".join(str(spec) for spec in factors) + ")"
    return stabilize(compute, m_q, m_z, label, spot_check)

#---------------------------------------------------------------------------------

# multiple q-polylogarithms
#---------------------------------------------------------------------------------
def _tail_products(zs: Sequence[Monomial]) -> List[Monomial]:
    """x_j = z_j ... z_d."""
    tails, running = [], ONE_MONOMIAL
    for z in reversed(zs):
        running = running * z
        tails.append(running)
    return list(reversed(tails))


def li_q(ks: Sequence[int], zs: Sequence[Monomial], m_q: int, m_z: int = 0, spot_check: bool = False) -> BiSeries:
    """
    Li_{q;k_1..k_d}(z_1, ..., z_d) = sum over 0 < n_1 < ... < n_d of prod z_i^n_i / (1 - q^n_i)^k_i.

    Raises:
        NonconvergentSpec: If some x_j = z_j ... z_d lacks positive (q, z)-order.
    """
    if len(ks) != len(zs):
        raise ValueError("index and arguments differ in length")
    if any(k < 1 for k in ks):
        raise ValueError("li_q needs positive indices")
    if not ks:
        return BiSeries.one(m_q, m_z)
    xs = _tail_products(zs)
    for x in xs:
        if not x.positive_order():
            raise NonconvergentSpec(f"argument product {x} has no positive order")

    def compute(cutoff: int) -> BiSeries:
        zero = BiSeries.zero(m_q, m_z)
        previous = [BiSeries.one(m_q, m_z)] + [zero] * cutoff
        for k, x in zip(ks, xs):
            current = [zero] * (cutoff + 1)
            pending = zero
            for n in range(cutoff + 1):
                if n:
                    current[n] = _power_of_r(pending, n, k)
                pending = (pending + previous[n]).shift(x)
            previous = current
        total = zero
        for value in previous:
            total = total + value
        return total

    return stabilize(compute, m_q, m_z, f"Li_q{tuple(ks)}", spot_check)


def li_q_integral(ks: Sequence[int], zs: Sequence[Monomial], m_q: int, m_z: int = 0,
                  spot_check: bool = False) -> BiSeries:
    """(-1)^d I_q(0; a_1, {0}^(k_1-1), ..., a_d, {0}^(k_d-1); 1) with a_i = 1/(z_i ... z_d)."""
    factors = []
    for k, x in zip(ks, _tail_products(zs)):
        factors.append(Single(ONE_MONOMIAL / x))
        factors.extend([Single(ZERO)] * (k - 1))
    result = iq_zero_series(factors, m_q, m_z, spot_check=spot_check)
    return result if len(ks) % 2 == 0 else -result

#---------------------------------------------------------------------------------

# q-MZVs
#---------------------------------------------------------------------------------
def _resolve_z(z) -> Optional[Monomial]:
    if z is None:
        return Z_VARIABLE
    if z is ZERO or z == 0:
        return None
    if not z.positive_order():
        raise NonconvergentSpec(f"z = {z} has no positive order")
    return z


def li1_aug(index: AugIndex, m_q: int, m_z: int = 0, z=None, spot_check: bool = False) -> BiSeries:
    """
    Yamamoto's Li_q^(1)(k; z): sum over 0 = m_0 < m_1 < ... < m_r of
    prod q^((k_i-1) m_i) (mu_i + (-1)^mu_i q^(m_(i-1)) z^(m_i - m_(i-1))) / (1 - q^(m_i))^k_i.

    Args:
        z: None for the free variable z, 0 for z = 0, or a monomial such as q.
    """
    z_value = _resolve_z(z)
    if not index:
        return BiSeries.one(m_q, m_z)

    def compute(cutoff: int) -> BiSeries:
        zero = BiSeries.zero(m_q, m_z)
        previous = [BiSeries.one(m_q, m_z)] + [zero] * cutoff
        for k, mu in index:
            current = [zero] * (cutoff + 1)
            prefix, twisted = zero, zero
            for m in range(cutoff + 1):
                if m:
                    inner = prefix if mu else zero
                    if z_value is not None:
                        inner = inner - twisted if mu else inner + twisted
                    if not inner.is_zero():
                        current[m] = _power_of_r(inner.shift(q_power((k - 1) * m)), m, k)
                prefix = prefix + previous[m]
                if z_value is not None:
                    twisted = (twisted + previous[m].shift(q_power(m))).shift(z_value)
            previous = current
        total = zero
        for value in previous:
            total = total + value
        return total

    return stabilize(compute, m_q, m_z, f"Li1{tuple(index)}", spot_check)


def zeta_bz(ks: Sequence[int], m_q: int, spot_check: bool = False) -> BiSeries:
    """Bradley-Zhao model: sum over 0 < m_1 < ... < m_r of prod q^((k_i-1) m_i) / (1 - q^m_i)^k_i."""
    if any(k < 1 for k in ks):
        raise ValueError("Bradley-Zhao indices are positive")
    return _mzv(ks, m_q, lambda series, k, m: _power_of_r(series.shift(q_power((k - 1) * m)), m, k),
                f"zeta_BZ{tuple(ks)}", spot_check)


def zeta_sz(ks: Sequence[int], m_q: int, spot_check: bool = False) -> BiSeries:
    """Schlesinger-Zudilin model: sum over 0 < m_1 < ... < m_r of prod (q^m_i / (1 - q^m_i))^k_i."""
    if any(k < 0 for k in ks):
        raise ValueError("Schlesinger-Zudilin indices are nonnegative")
    return _mzv(ks, m_q, lambda series, k, m: _power_of_r(series.shift(q_power(k * m)), m, k),
                f"zeta_SZ{tuple(ks)}", spot_check)


def _mzv(ks, m_q, summand, label, spot_check) -> BiSeries:
    if not ks:
        return BiSeries.one(m_q)

    def compute(cutoff: int) -> BiSeries:
        zero = BiSeries.zero(m_q)
        previous = [BiSeries.one(m_q)] + [zero] * cutoff
        for k in ks:
            current = [zero] * (cutoff + 1)
            prefix = zero
            for m in range(cutoff + 1):
                if m and not prefix.is_zero():
                    current[m] = summand(prefix, k, m)
                prefix = prefix + previous[m]
            previous = current
        total = zero
        for value in previous:
            total = total + value
        return total

    return stabilize(compute, m_q, 0, label, spot_check)


def bz_blocks(index: Sequence[int]) -> List[Tuple[int, int]]:
    """Split ({1}^(l_1-1), k_1+1, ..., {1}^(l_r-1), k_r+1) into pairs (l_j, k_j)."""
    blocks, ones = [], 0
    for entry in index:
        if entry == 1:
            ones += 1
        elif entry >= 2:
            blocks.append((ones + 1, entry - 1))
            ones = 0
        else:
            raise ValueError(f"invalid Bradley-Zhao entry {entry}")
    if ones:
        raise ValueError(f"index {tuple(index)} does not end with an entry >= 2")
    return blocks


def bz_from_blocks(blocks: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    index = []
    for l, k in blocks:
        index.extend([1] * (l - 1))
        index.append(k + 1)
    return tuple(index)


def sz_blocks(index: Sequence[int]) -> List[Tuple[int, int]]:
    """Split ({0}^(l_1-1), k_1, ..., {0}^(l_r-1), k_r) into pairs (l_j, k_j)."""
    blocks, zeros = [], 0
    for entry in index:
        if entry == 0:
            zeros += 1
        elif entry >= 1:
            blocks.append((zeros + 1, entry))
            zeros = 0
        else:
            raise ValueError(f"invalid Schlesinger-Zudilin entry {entry}")
    if zeros:
        raise ValueError(f"index {tuple(index)} does not end with a positive entry")
    return blocks


def sz_from_blocks(blocks: Sequence[Tuple[int, int]]) -> Tuple[int, ...]:
    index = []
    for l, k in blocks:
        index.extend([0] * (l - 1))
        index.append(k)
    return tuple(index)


def _dual_blocks(blocks):
    return [(k, l) for l, k in reversed(blocks)]


def bz_dual(index: Sequence[int]) -> Tuple[int, ...]:
    return bz_from_blocks(_dual_blocks(bz_blocks(index)))


def sz_dual(index: Sequence[int]) -> Tuple[int, ...]:
    return sz_from_blocks(_dual_blocks(sz_blocks(index)))


def enumerate_bz_indices(weight_max: int) -> List[Tuple[int, ...]]:
    """Admissible Bradley-Zhao indices (last entry >= 2) of weight <= weight_max."""
    return [c for c in compositions(weight_max, min_weight=2) if c[-1] >= 2]


def enumerate_sz_indices(weight_max: int) -> List[Tuple[int, ...]]:
    """Schlesinger-Zudilin indices whose blocks (l_j, k_j) have total sum <= weight_max."""
    return [sz_from_blocks(bz_blocks(c)) for c in enumerate_bz_indices(weight_max)]

#---------------------------------------------------------------------------------

# L_q at A = 0
#---------------------------------------------------------------------------------
def lq_series(word: Union[Word, LinComb], asg: Assignment, m_q: int, m_z: int = 0,
              spot_check: bool = False) -> BiSeries:
    """L_q(w) with A = 0 as a truncated series; linear on LinComb."""
    if isinstance(word, LinComb):
        total = BiSeries.zero(m_q, m_z)
        for term, coeff in word.items():
            total = total + lq_series(term, asg, m_q, m_z, spot_check).scale(coeff)
        return total
    require_admissible(word)
    if not word:
        return BiSeries.one(m_q, m_z)
    if isinstance(asg.D, Special):
        raise ValueError(f"upper limit D = {format_param(asg.D)} is not a monomial")
    factors = [Bracket(u, v) for u, v in shifted_pairs(word, asg)]
    return iq_zero_series(factors, m_q, m_z, upper=asg.D, spot_check=spot_check)


def f_series(word: Union[Word, LinComb], m_q: int, spot_check: bool = False) -> BiSeries:
    """f(w): L_q(w) at A = 0, B = C = infinity, D = 1."""
    return lq_series(word, Assignment.zero_limit(), m_q, 0, spot_check)


def lq_prop34(index: AugIndex, m_q: int, m_z: int = 0, spot_check: bool = False) -> BiSeries:
    """L_q(theta(w(k))) at A = 0, B = infinity, C = z^-1 q^-k, D = 1 with k the weight."""
    weight = sum(k for k, _ in index)
    asg = Assignment.zero_limit(B=INFINITY, C=Monomial.of(q=-weight, z=-1))
    return lq_series(theta(aug_to_word(index)), asg, m_q, m_z, spot_check)


def erase_ad_terms(word: Word, position: int) -> List[Word]:
    """For w = w1 AD w2 (AD at ``position``): [w1 AB w2, w1 BD w2, w1 w2]."""
    if word[position] is not Letter.AD:
        raise ValueError(f"letter {position} of {format_word(word)} is not AD")
    head, tail = word[:position], word[position + 1:]
    return [head + (Letter.AB,) + tail, head + (Letter.BD,) + tail, head + tail]


def bz_word_index(word: Word) -> Tuple[int, ...]:
    """The index ({1}^(l_1-1), k_1+1, ...) of e_BD^l_1 e_AB^k_1 ... e_BD^l_r e_AB^k_r."""
    if any(letter not in (Letter.AB, Letter.BD) for letter in word):
        raise ValueError(f"{format_word(word)} is not a word in AB and BD")
    require_admissible(word)
    blocks = []
    for letter in word:
        if letter is Letter.BD:
            if not blocks or blocks[-1][1]:
                blocks.append([0, 0])
            blocks[-1][0] += 1
        else:
            blocks[-1][1] += 1
    return bz_from_blocks([(l, k) for l, k in blocks])
