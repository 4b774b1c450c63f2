"""
Word algebras for the duality engine.

Three alphabets are used:
- the six pairwise letters AB, AC, AD, BC, BD, CD (words of W and W^0),
- the three letters x, y, z of the B = C = infinity reformulation,
- Yamamoto's letters x, y0, y1 for augmented indices.

Words are plain tuples of enum members so they hash, compare and slice like
any other tuple. Text form is dot-separated letter names ("BD.AB").
"""
import itertools
import re
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple, Union

from errors import NotAdmissible, NotInH0, ParseError


class Mark(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"

    @property
    def sigma(self) -> "Mark":
        """The pairing A <-> D, B <-> C."""
        return _SIGMA[self]


_SIGMA = {Mark.A: Mark.D, Mark.B: Mark.C, Mark.C: Mark.B, Mark.D: Mark.A}
MARK_ORDER = (Mark.A, Mark.B, Mark.C, Mark.D)


class Letter(Enum):
    """A six-alphabet letter e_uv with u < v."""
    AB = "AB"
    AC = "AC"
    AD = "AD"
    BC = "BC"
    BD = "BD"
    CD = "CD"

    @property
    def u(self) -> Mark:
        return Mark(self.value[0])

    @property
    def v(self) -> Mark:
        return Mark(self.value[1])

    @property
    def marks(self) -> Tuple[Mark, Mark]:
        return self.u, self.v

    @classmethod
    def from_marks(cls, u: Mark, v: Mark) -> "Letter":
        if MARK_ORDER.index(u) >= MARK_ORDER.index(v):
            raise ValueError(f"marks {u.value}{v.value} are not in canonical order")
        return cls(u.value + v.value)

    @property
    def tau(self) -> "Letter":
        # sigma reverses the mark order, so sigma(v) sigma(u) is already canonical
        return Letter.from_marks(self.v.sigma, self.u.sigma)


LETTERS = tuple(Letter)
A_START = frozenset({Letter.AB, Letter.AC, Letter.AD})
D_END = frozenset({Letter.AD, Letter.BD, Letter.CD})


class Letter3(Enum):
    X = "x"
    Y = "y"
    Z = "z"


class YamLetter(Enum):
    X = "x"
    Y0 = "y0"
    Y1 = "y1"


Word = Tuple[Letter, ...]
Word3 = Tuple[Letter3, ...]
YamWord = Tuple[YamLetter, ...]
AugIndex = Tuple[Tuple[int, int], ...]

_ALPHABETS = {"six": Letter, "three": Letter3, "yam": YamLetter}

# parsing and formatting
#---------------------------------------------------------------------------------
def parse_word(text: str, alphabet: str = "six") -> tuple:
    """
    Parse dot- or space-separated letter names into a word.

    Args:
        text (str): e.g. "BD.AB", "y.x" or "y1.x".
        alphabet (str): "six", "three" or "yam".

    Returns:
        tuple: The word as a tuple of letters (empty for blank text).

    Raises:
        ParseError: If a token is not a letter of the alphabet.
    """
    if alphabet not in _ALPHABETS:
        raise ValueError(f"Invalid alphabet: {alphabet}")
    letter_type = _ALPHABETS[alphabet]
    word = []
    expect_letter = True
    for match in re.finditer(r"[^.\s]+|\.", text):
        token = match.group()
        if token == ".":
            if expect_letter:
                raise ParseError("empty letter", match.start())
            expect_letter = True
            continue
        try:
            word.append(letter_type(token))
        except ValueError:
            raise ParseError(f"unknown letter {token!r}", match.start()) from None
        expect_letter = False
    if word and expect_letter:
        raise ParseError("empty letter", len(text))
    return tuple(word)


def format_word(word: Iterable) -> str:
    return ".".join(letter.value for letter in word)

#---------------------------------------------------------------------------------

# six-letter words
#---------------------------------------------------------------------------------
def is_admissible(word: Word) -> bool:
    """W^0: empty, or not starting with e_Av and not ending with e_uD."""
    if not word:
        return True
    return word[0] not in A_START and word[-1] not in D_END


def require_admissible(word: Word):
    if not is_admissible(word):
        raise NotAdmissible(f"word {format_word(word) or '(empty)'} is not admissible")


def tau(word: Word) -> Word:
    """Reverse the word and send e_uv to e_sigma(v)sigma(u)."""
    return tuple(letter.tau for letter in reversed(word))


def enumerate_admissible(k: int) -> List[Word]:
    """All admissible words of length exactly k in lexicographic letter order."""
    if k < 0:
        raise ValueError("word length must be nonnegative")
    return [word for word in itertools.product(LETTERS, repeat=k) if is_admissible(word)]


def m_of(word: Word) -> int:
    return 1 + sum(1 for letter in word if letter is not Letter.AD)


def kappa_of(word: Word) -> int:
    return sum(1 for letter in word if letter is Letter.AD)


def from_ab_bd_blocks(ls: Iterable[int], ks: Iterable[int]) -> Word:
    """The word e_BD^l1 e_AB^k1 ... e_BD^lr e_AB^kr."""
    word = []
    for l, k in zip(ls, ks):
        word.extend([Letter.BD] * l)
        word.extend([Letter.AB] * k)
    return tuple(word)

#---------------------------------------------------------------------------------

# linear combinations
#---------------------------------------------------------------------------------
class LinComb:
    """Finite Q-linear combination of words; zero coefficients are never stored."""

    def __init__(self, terms: Dict[tuple, Fraction] = None):
        self.terms = {word: Fraction(c) for word, c in (terms or {}).items() if c != 0}

    @classmethod
    def of(cls, word: tuple, coeff=1) -> "LinComb":
        return cls({word: Fraction(coeff)})

    def items(self):
        return sorted(self.terms.items(), key=lambda item: [l.value for l in item[0]])

    def __add__(self, other: "LinComb") -> "LinComb":
        terms = dict(self.terms)
        for word, c in other.terms.items():
            terms[word] = terms.get(word, Fraction(0)) + c
        return LinComb(terms)

    def __neg__(self) -> "LinComb":
        return self.scale(-1)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def scale(self, c) -> "LinComb":
        return LinComb({word: c * coeff for word, coeff in self.terms.items()})

    def __mul__(self, other: "LinComb") -> "LinComb":
        """Concatenation product."""
        terms = {}
        for left, a in self.terms.items():
            for right, b in other.terms.items():
                word = left + right
                terms[word] = terms.get(word, Fraction(0)) + a * b
        return LinComb(terms)

    def map_words(self, fn) -> "LinComb":
        return LinComb({fn(word): c for word, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        parts = [f"{c}*[{format_word(word)}]" for word, c in self.items()]
        return " + ".join(parts) or "0"

#---------------------------------------------------------------------------------

# the x, y, z alphabet
#---------------------------------------------------------------------------------
class _ContainsBC:
    """Marker returned by collapse: the word contains e_BC and vanishes at B = C = infinity."""

    def __repr__(self):
        return "ContainsBC"


CONTAINS_BC = _ContainsBC()

_COLLAPSE = {
    Letter.AB: Letter3.X, Letter.AC: Letter3.X,
    Letter.BD: Letter3.Y, Letter.CD: Letter3.Y,
    Letter.AD: Letter3.Z,
}


def collapse(word: Word) -> Union[Word3, _ContainsBC]:
    if Letter.BC in word:
        return CONTAINS_BC
    return tuple(_COLLAPSE[letter] for letter in word)


def is_h0(word: Word3) -> bool:
    """Q + y h x: empty, or starting with y and ending with x."""
    return not word or (word[0] is Letter3.Y and word[-1] is Letter3.X)


def require_h0(word: Word3):
    if not is_h0(word):
        raise NotInH0(f"word {format_word(word)} is not in y h x")


def enumerate_h0_words(length_max: int) -> List[Word3]:
    words = []
    for k in range(length_max + 1):
        words.extend(w for w in itertools.product(tuple(Letter3), repeat=k) if is_h0(w))
    return words

#---------------------------------------------------------------------------------

# augmented indices
#---------------------------------------------------------------------------------
def is_admissible_aug(index: AugIndex) -> bool:
    return not index or tuple(index[-1]) != (1, 1)


def aug_to_word(index: AugIndex) -> YamWord:
    """w(k) = y_mu1 x^(k1-1) ... y_mur x^(kr-1)."""
    word = []
    for k, mu in index:
        if k < 1 or mu not in (0, 1):
            raise ValueError(f"invalid augmented integer ({k}, {mu})")
        word.append(YamLetter.Y1 if mu else YamLetter.Y0)
        word.extend([YamLetter.X] * (k - 1))
    return tuple(word)


def word_to_aug(word: YamWord) -> AugIndex:
    """Inverse of aug_to_word; the word must start with y0 or y1."""
    if word and word[0] is YamLetter.X:
        raise NotAdmissible(f"{format_word(word)} does not start with a y-letter")
    index = []
    for letter in word:
        if letter is YamLetter.X:
            k, mu = index[-1]
            index[-1] = (k + 1, mu)
        else:
            index.append((1, 1 if letter is YamLetter.Y1 else 0))
    return tuple(index)


_TAU_PRIME = {YamLetter.X: YamLetter.Y1, YamLetter.Y0: YamLetter.Y0, YamLetter.Y1: YamLetter.X}


def tau_prime(word: YamWord) -> YamWord:
    """Anti-automorphism x -> y1, y0 -> y0, y1 -> x."""
    return tuple(_TAU_PRIME[letter] for letter in reversed(word))


def dual_index(index: AugIndex) -> AugIndex:
    """
    The dual augmented index, defined by tau'(w(k)) = w(k-dagger).

    Raises:
        NotAdmissible: If the index is not admissible.
    """
    if not is_admissible_aug(index):
        raise NotAdmissible(f"augmented index {index} is not admissible")
    return word_to_aug(tau_prime(aug_to_word(index)))


_THETA = {
    YamLetter.X: LinComb({(Letter.AC,): 1, (Letter.BC,): -1}),
    YamLetter.Y0: LinComb({(Letter.BC,): 1}),
    YamLetter.Y1: LinComb({(Letter.BD,): 1, (Letter.BC,): -1}),
}


def theta(word: YamWord) -> LinComb:
    """Algebra homomorphism x -> AC - BC, y0 -> BC, y1 -> BD - BC, fully expanded."""
    result = LinComb.of(())
    for letter in word:
        result = result * _THETA[letter]
    return result


def compositions(weight_max: int, min_weight: int = 1) -> List[Tuple[int, ...]]:
    """All tuples of positive integers with sum in [min_weight, weight_max]."""
    result = []

    def extend(prefix, remaining):
        if prefix and sum(prefix) >= min_weight:
            result.append(tuple(prefix))
        for part in range(1, remaining + 1):
            extend(prefix + [part], remaining - part)

    extend([], weight_max)
    return sorted(result, key=lambda c: (sum(c), len(c), c))


def enumerate_aug_indices(weight_max: int, admissible_only: bool = True) -> List[AugIndex]:
    indices = [()]
    for ks in compositions(weight_max):
        for mus in itertools.product((0, 1), repeat=len(ks)):
            index = tuple(zip(ks, mus))
            if not admissible_only or is_admissible_aug(index):
                indices.append(index)
    return indices
