"""
q-shift exponents and parameter assignments.

For a word u_1 ... u_k the functional L_q deforms the parameters of letter j
by powers of q counted over the rest of the word. This module computes those
exponent tables (and the companion tables used by the A = D and AD = BC q^m
arguments) and resolves the marks A, B, C, D into parameter values.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from valuedomain import Monomial, ONE_MONOMIAL
from words import Letter, Mark, Word

Quad = Tuple[int, int, int, int]

_AB, _AC, _AD, _BC, _BD, _CD = Letter.AB, Letter.AC, Letter.AD, Letter.BC, Letter.BD, Letter.CD
_A_SHIFT = frozenset({_BC, _BD, _CD})
_D_SHIFT = frozenset({_AB, _AC, _BC})
_MARK_POSITION = {Mark.A: 0, Mark.B: 1, Mark.C: 2, Mark.D: 3}


class Special(Enum):
    """Projective points that absorb q-shifts."""
    ZERO = "0"
    INFINITY = "inf"


ZERO = Special.ZERO
INFINITY = Special.INFINITY
Param = Union[Monomial, Special]


def shift_param(param: Param, e: int) -> Param:
    if isinstance(param, Special):
        return param
    return param.shift_q(e)


def format_param(param: Param) -> str:
    if param is ZERO:
        return "0"
    if param is INFINITY:
        return "inf"
    return str(param)


# shift tables
#---------------------------------------------------------------------------------
_INCREMENTS: Dict[Letter, Quad] = {
    _AB: (0, 1, 0, 1),
    _AC: (0, 0, 1, 1),
    _AD: (0, 0, 0, 0),
    _BC: (1, 1, 1, 1),
    _BD: (1, 1, 0, 0),
    _CD: (1, 0, 1, 0),
}


def increment_vector(letter: Letter) -> Quad:
    """Per-letter increment of (a, b, c, d) between consecutive positions."""
    return _INCREMENTS[letter]


@dataclass(frozen=True)
class ShiftTable:
    """
    Exponent quadruples (a, b, c, d) for the marks (A, B, C, D).

    Attributes:
        word: the word the table was computed for.
        shifts: positions 1..k (index j-1); the exponents L_q applies to letter j.
        steps: positions 0..k; the same counts with strict tails (h > j).
        mirrored: positions 1..k; the [j]-exponents (tails and heads exchanged).
        primed: positions 1..k; heads h < j with the leading 1 in the B and C entries.
    """
    word: Word
    shifts: Tuple[Quad, ...]
    steps: Tuple[Quad, ...]
    mirrored: Tuple[Quad, ...]
    primed: Tuple[Quad, ...]

    def exponent(self, j: int, mark: Mark) -> int:
        """Shift exponent of ``mark`` at position j (1-based)."""
        return self.shifts[j - 1][_MARK_POSITION[mark]]


def _count(letters, predicate) -> int:
    return sum(1 for letter in letters if predicate(letter))


def shift_table(word: Word) -> ShiftTable:
    k = len(word)
    shifts, steps, mirrored, primed = [], [], [], []
    for j in range(0, k + 1):
        head = word[:j]          # h <= j
        strict_head = word[:j - 1] if j else ()  # h < j
        tail = word[j - 1:] if j else word  # h >= j
        strict_tail = word[j:]   # h > j
        steps.append((
            _count(head, lambda l: l in _A_SHIFT),
            _count(head, lambda l: l not in (_AC, _AD)) + _count(strict_tail, lambda l: l is _CD),
            _count(head, lambda l: l not in (_AB, _AD)) + _count(strict_tail, lambda l: l is _BD),
            -_count(strict_tail, lambda l: l in _D_SHIFT),
        ))
        if j == 0:
            continue
        shifts.append((
            _count(head, lambda l: l in _A_SHIFT),
            _count(head, lambda l: l not in (_AC, _AD)) + _count(tail, lambda l: l is _CD),
            _count(head, lambda l: l not in (_AB, _AD)) + _count(tail, lambda l: l is _BD),
            -_count(tail, lambda l: l in _D_SHIFT),
        ))
        mirrored.append((
            _count(tail, lambda l: l in _D_SHIFT),
            _count(tail, lambda l: l not in (_AD, _BD)) + _count(head, lambda l: l is _AB),
            _count(tail, lambda l: l not in (_AD, _CD)) + _count(head, lambda l: l is _AC),
            -_count(head, lambda l: l in _A_SHIFT),
        ))
        primed.append((
            _count(strict_head, lambda l: l in _A_SHIFT),
            1 + _count(strict_head, lambda l: l not in (_AC, _AD)) + _count(tail, lambda l: l is _CD),
            1 + _count(strict_head, lambda l: l not in (_AB, _AD)) + _count(tail, lambda l: l is _BD),
            -_count(tail, lambda l: l in _D_SHIFT),
        ))
    return ShiftTable(tuple(word), tuple(shifts), tuple(steps), tuple(mirrored), tuple(primed))


def dual_exponents(word: Word, j: int) -> Quad:
    """
    (a', b', c', d') of tau(word) at position k+1-j, written through the strict
    steps of ``word``: (-d_j, 1 - a_j + b_j - d_j, 1 - a_j + c_j - d_j, -a_j).
    """
    a, b, c, d = shift_table(word).steps[j]
    return -d, 1 - a + b - d, 1 - a + c - d, -a

#---------------------------------------------------------------------------------

# assignments
#---------------------------------------------------------------------------------
SYMBOL_B = Monomial.of(B=1)
SYMBOL_C = Monomial.of(C=1)
SYMBOL_D = Monomial.of(D=1)


@dataclass(frozen=True)
class Assignment:
    """
    Values of the marks. A is q^N times the value of D unless ``A`` is given
    explicitly (the A = 0 limit).
    """
    N: int
    B: Param = SYMBOL_B
    C: Param = SYMBOL_C
    D: Param = SYMBOL_D
    A: Optional[Param] = None
    label: str = "generic"

    def __post_init__(self):
        if self.N < 0:
            raise ValueError("N must be nonnegative")

    @property
    def a_value(self) -> Param:
        if self.A is not None:
            return self.A
        return shift_param(self.D, self.N)

    def value(self, mark: Mark) -> Param:
        if mark is Mark.A:
            return self.a_value
        return {Mark.B: self.B, Mark.C: self.C, Mark.D: self.D}[mark]

    def describe(self) -> dict:
        return {
            "label": self.label,
            "N": self.N,
            "A": format_param(self.a_value),
            "B": format_param(self.B),
            "C": format_param(self.C),
            "D": format_param(self.D),
        }

    # constructors
    @classmethod
    def generic(cls, N: int) -> "Assignment":
        return cls(N)

    @classmethod
    def dehomogenized(cls, N: int) -> "Assignment":
        """D = 1; L_q is homogeneous of degree 0 in (A, B, C, D)."""
        return cls(N, D=ONE_MONOMIAL, label="dehomogenized")

    @classmethod
    def ad_equals_bc(cls, N: int, m: int) -> "Assignment":
        """C = q^(N-m) D^2 / B, i.e. AD = BC q^m with A = q^N D."""
        c_value = Monomial.of(q=N - m, B=-1, D=2)
        return cls(N, C=c_value, label=f"AD=BCq^{m}")

    @classmethod
    def a_equals_d(cls, dehomogenize: bool = True) -> "Assignment":
        """A = D forces q^N = 1, hence N = 0."""
        return cls(0, D=ONE_MONOMIAL if dehomogenize else SYMBOL_D, label="A=D")

    @classmethod
    def b_c_infinite(cls, N: int, D: Param = ONE_MONOMIAL) -> "Assignment":
        return cls(N, B=INFINITY, C=INFINITY, D=D, label="B=C=inf")

    @classmethod
    def b_equals_c(cls, N: int) -> "Assignment":
        return cls(N, C=SYMBOL_B, D=ONE_MONOMIAL, label="B=C")

    @classmethod
    def zero_limit(cls, B: Param = INFINITY, C: Param = INFINITY, D: Param = ONE_MONOMIAL) -> "Assignment":
        """A = 0 (the N -> infinity limit) for series evaluation."""
        return cls(0, B=B, C=C, D=D, A=ZERO, label="A=0")


def shifted_pair(word: Word, j: int, asg: Assignment, table: Optional[ShiftTable] = None) -> Tuple[Param, Param]:
    """The pair (u_j^(j), v_j^(j)) for 1 <= j <= len(word)."""
    if not 1 <= j <= len(word):
        raise IndexError(f"position {j} outside word of length {len(word)}")
    table = table or shift_table(word)
    letter = word[j - 1]
    return tuple(shift_param(asg.value(mark), table.exponent(j, mark)) for mark in letter.marks)


def shifted_pairs(word: Word, asg: Assignment) -> List[Tuple[Param, Param]]:
    table = shift_table(word)
    return [shifted_pair(word, j, asg, table) for j in range(1, len(word) + 1)]


def mirrored_param(word: Word, j: int, mark: Mark, asg: Assignment) -> Param:
    """The [j]-shifted value of ``mark`` computed on ``word``."""
    table = shift_table(word)
    return shift_param(asg.value(mark), table.mirrored[j - 1][_MARK_POSITION[mark]])
