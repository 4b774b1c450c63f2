"""
Finite iterated q-integrals.

A chain x <| t_1 <| ... <| t_k <| x q^-N is stored as exponents
0 <= n_1 <= ... <= n_k <= N with t_j = x q^(-n_j); the order is never tested on
field values. Every evaluator takes a domain object (valuedomain.LAZY, a
PointDomain, or the float domain of the classical check) so the same code
produces lazy expressions, exact values at a point, or residues mod p.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, List, Sequence, Union

from errors import PoleDetected, ZeroParameter
from shifts import INFINITY, ZERO, Assignment, Param, Special, format_param, shift_param, shift_table, shifted_pairs
from valuedomain import LAZY, Monomial, ONE_MONOMIAL
from words import (
    Letter3, LinComb, Mark, Word, Word3, require_admissible, require_h0, tau,
)

logger = logging.getLogger(__name__)

_POSITION = {Mark.A: 0, Mark.B: 1, Mark.C: 2, Mark.D: 3}


@dataclass(frozen=True)
class Single:
    """The factor t/(t - u)."""
    u: Param

    def __str__(self):
        return format_param(self.u)


@dataclass(frozen=True)
class Bracket:
    """The factor t/(t - u) - t/(t - v)."""
    u: Param
    v: Param

    def __str__(self):
        return f"[{format_param(self.u)}, {format_param(self.v)}]"


FactorSpec = Union[Single, Bracket]


# factor kernels
#---------------------------------------------------------------------------------
def kernel(t: Monomial, u: Param, domain=LAZY):
    """
    The value t/(t - u) = 1/(1 - u/t).

    Raises:
        PoleDetected: If u/t is identically 1.
    """
    if u is ZERO:
        return domain.one()
    if u is INFINITY:
        return domain.zero()
    ratio = u / t
    if ratio.is_one:
        raise PoleDetected(f"parameter {u} coincides with chain point {t}")
    return domain.geometric(ratio)


def factor_value(spec: FactorSpec, t: Monomial, domain=LAZY):
    if isinstance(spec, Single):
        return kernel(t, spec.u, domain)
    return kernel(t, spec.u, domain) - kernel(t, spec.v, domain)


def chain_points(x_scale: Monomial, N: int) -> List[Monomial]:
    return [x_scale.shift_q(-n) for n in range(N + 1)]


def _require_scale(x_scale: Param) -> Monomial:
    if isinstance(x_scale, Special):
        raise ValueError(f"lower limit {format_param(x_scale)} needs the series evaluator")
    return x_scale


def chain_sum(factor_fns: Sequence[Callable[[int], object]], N: int, domain=LAZY):
    """
    Sum over 0 <= n_1 <= ... <= n_k <= N of prod_j factor_fns[j](n_j).
    Prefix sums keep the cost at k * (N + 1) factor evaluations.
    """
    if not factor_fns:
        return domain.one()
    row = [factor_fns[0](n) for n in range(N + 1)]
    for fn in factor_fns[1:]:
        prefix = domain.zero()
        new_row = []
        for n in range(N + 1):
            prefix = prefix + row[n]
            new_row.append(fn(n) * prefix)
        row = new_row
    total = domain.zero()
    for value in row:
        total = total + value
    return total

#---------------------------------------------------------------------------------

# iterated q-integrals
#---------------------------------------------------------------------------------
def iq(x_scale: Param, factors: Sequence[FactorSpec], N: int, domain=LAZY):
    """
    I_q(x; f_1, ..., f_k; x q^-N) by prefix-sum dynamic programming.

    Args:
        x_scale: lower limit x (a monomial).
        factors: Single or Bracket specs, one per integration variable.
        N: number of q-steps between the limits.
        domain: value domain the result is built in.

    Returns:
        The sum over all chains; 1 for an empty factor list.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    points = chain_points(_require_scale(x_scale), N)
    fns = [lambda n, spec=spec: factor_value(spec, points[n], domain) for spec in factors]
    return chain_sum(fns, N, domain)


def iq_naive(x_scale: Param, factors: Sequence[FactorSpec], N: int, domain=LAZY):
    """Direct enumeration of every chain."""
    points = chain_points(_require_scale(x_scale), N)
    total = domain.zero()
    for chain in itertools.combinations_with_replacement(range(N + 1), len(factors)):
        term = domain.one()
        for spec, n in zip(factors, chain):
            term = term * factor_value(spec, points[n], domain)
        total = total + term
    return total


def lq(word: Union[Word, LinComb], asg: Assignment, domain=LAZY):
    """
    L_q(u_1 v_1 ... u_k v_k) = I_q(A; [u_1^(1), v_1^(1)], ..., [u_k^(k), v_k^(k)]; D).

    Raises:
        NotAdmissible: If the word is not in W^0.
    """
    if isinstance(word, LinComb):
        return lq_lincomb(word, asg, domain)
    require_admissible(word)
    if not word:
        return domain.one()
    factors = [Bracket(u, v) for u, v in shifted_pairs(word, asg)]
    return iq(asg.a_value, factors, asg.N, domain)


def lq_lincomb(lc: LinComb, asg: Assignment, domain=LAZY):
    total = domain.zero()
    for word, coeff in lc.items():
        total = total + domain.constant(coeff) * lq(word, asg, domain)
    return total


def inversion_transform(factors: Sequence[Bracket], x_scale: Monomial, N: int) -> List[Bracket]:
    """
    The substitution t -> xy/t with xy = x^2 q^-N: [u, v] -> [xy/v, xy/u], reversed.

    Raises:
        ZeroParameter: If a parameter is 0 or infinity.
    """
    xy = (x_scale * x_scale).shift_q(-N)

    def invert(param: Param) -> Monomial:
        if isinstance(param, Special):
            raise ZeroParameter(f"parameter {format_param(param)} is not invertible")
        return xy / param

    result = []
    for spec in reversed(factors):
        if not isinstance(spec, Bracket):
            raise TypeError("inversion_transform needs bracket factors")
        result.append(Bracket(invert(spec.v), invert(spec.u)))
    return result

#---------------------------------------------------------------------------------

# the B = C = infinity objects
#---------------------------------------------------------------------------------
def q_power(e: int) -> Monomial:
    return Monomial.of(q=e)


def R(n: int, domain=LAZY):
    """R_n = 1/(1 - q^n)."""
    return domain.geometric(q_power(n))


def z_functional(word: Word3, N: int, invert_q: bool = False, domain=LAZY):
    """
    Z_{N,q}(w) for w in Q + y h x; with ``invert_q`` the value Z_{N,1/q}(w).

    Raises:
        NotInH0: If the word does not start with y and end with x.
    """
    require_h0(word)
    sign = -1 if invert_q else 1
    fns = []
    for j, letter in enumerate(word):
        ys_head = sum(1 for l in word[:j + 1] if l is Letter3.Y)
        xs_tail = sum(1 for l in word[j:] if l is Letter3.X)

        def lower(n, e=ys_head):
            return domain.geometric(q_power(sign * (n + e)))

        def upper(n, e=xs_tail):
            return domain.geometric(q_power(sign * (n - N - e)))

        if letter is Letter3.X:
            fns.append(lower)
        elif letter is Letter3.Y:
            fns.append(lambda n, upper=upper: -upper(n))
        else:
            fns.append(lambda n, lower=lower, upper=upper: lower(n) - upper(n))
    return chain_sum(fns, N, domain)


def g_klmn(k: int, l: int, m: int, n: int, N: int, domain=LAZY):
    """g_{k,l,m,n}(N) = I_q(1; {q^(-N-m)}^k, {q^n}^l; q^-N)."""
    factors = [Single(q_power(-N - m))] * k + [Single(q_power(n))] * l
    return iq(ONE_MONOMIAL, factors, N, domain)


def f_kl(k: int, l: int, N: int, domain=LAZY):
    """f_{k,l}(N) = I_q(1; {q^(-N-l)}^k, {q^k}^l; q^-N)."""
    return g_klmn(k, l, l, k, N, domain)

#---------------------------------------------------------------------------------

# the A = D closed form
#---------------------------------------------------------------------------------
def _omega_from(word: Word, row, j: int, asg: Assignment, domain):
    letter = word[j - 1]
    t = _require_scale(asg.a_value)
    values = [shift_param(asg.value(mark), row[_POSITION[mark]]) for mark in letter.marks]
    return kernel(t, values[0], domain) - kernel(t, values[1], domain)


def omega(word: Word, j: int, domain=LAZY, asg: Assignment = None):
    """omega_j: the single-chain factor of letter j at A = D."""
    asg = asg or Assignment.a_equals_d()
    return _omega_from(word, shift_table(word).steps[j], j, asg, domain)


def omega_dual(word: Word, j: int, domain=LAZY, asg: Assignment = None):
    """omega'_j: the factor of letter j of tau(word) from the primed table."""
    asg = asg or Assignment.a_equals_d()
    dual = tau(word)
    return _omega_from(dual, shift_table(dual).primed[j - 1], j, asg, domain)


def lq_AeqD_product(word: Word, domain=LAZY, asg: Assignment = None):
    """L_q(w) at A = D as the product of its omega_j."""
    require_admissible(word)
    result = domain.one()
    for j in range(1, len(word) + 1):
        result = result * omega(word, j, domain, asg)
    return result


def lq_AeqD_dual_product(word: Word, domain=LAZY, asg: Assignment = None):
    """L_q(tau(w)) at A = D as the product of the omega'_j."""
    require_admissible(word)
    result = domain.one()
    for j in range(1, len(word) + 1):
        result = result * omega_dual(word, j, domain, asg)
    return result


def phi(word: Word, j: int, domain=LAZY, asg: Assignment = None):
    """
    Phi(j) = q^(a d) prod (A - B q^l) prod (A - C q^l) / prod (A - B q^l) prod (A - C q^l)
    over the ranges fixed by (a_j, b_j, c_j, d_j); each range has a_j terms so A cancels.
    """
    asg = asg or Assignment.a_equals_d()
    a, b, c, d = shift_table(word).steps[j]
    t = _require_scale(asg.a_value)
    result = domain.monomial(q_power(a * d))
    for mark, e in ((Mark.B, b), (Mark.C, c)):
        ratio = asg.value(mark) / t
        for l in range(1 - a + e - d, e - d + 1):
            result = result * (domain.one() - domain.monomial(ratio.shift_q(l)))
        for l in range(1 - a + e, e + 1):
            result = result * domain.geometric(ratio.shift_q(l))
    return result
