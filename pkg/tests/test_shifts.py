"""
Unit tests for shift tables and parameter assignments.
"""
import itertools

import pytest

from shifts import (
    INFINITY, ZERO, Assignment, dual_exponents, format_param, increment_vector, mirrored_param, shift_param,
    shift_table, shifted_pair, shifted_pairs,
)
from valuedomain import Monomial, ONE_MONOMIAL
from words import LETTERS, Letter, Mark, enumerate_admissible, m_of, tau

AB, BC, BD = Letter.AB, Letter.BC, Letter.BD


def _all_words(length_max):
    for k in range(length_max + 1):
        yield from itertools.product(LETTERS, repeat=k)


def _admissible_words(length_max):
    for k in range(1, length_max + 1):
        yield from enumerate_admissible(k)


@pytest.mark.unit
class TestShiftTables:
    """Tests for the exponent tables."""

    def test_increment_vectors(self):
        """Test the per-letter increments."""
        assert increment_vector(Letter.AD) == (0, 0, 0, 0)
        assert increment_vector(BC) == (1, 1, 1, 1)
        assert increment_vector(AB) == (0, 1, 0, 1)

    def test_single_letter(self):
        """Test the shifts of the one-letter word BC."""
        table = shift_table((BC,))
        assert table.shifts == ((1, 1, 1, -1),)
        assert table.exponent(1, Mark.B) == 1
        assert len(table.steps) == 2

    def test_table_lengths(self):
        """Test that every table has the expected number of rows."""
        word = (BD, BC, AB)
        table = shift_table(word)
        assert len(table.shifts) == 3
        assert len(table.steps) == 4
        assert len(table.mirrored) == 3
        assert len(table.primed) == 3

    def test_empty_word(self):
        """Test the empty word has one step row and no shifts."""
        table = shift_table(())
        assert table.shifts == ()
        assert table.steps == ((0, 0, 0, 0),)


@pytest.mark.unit
class TestAssignments:
    """Tests for Assignment constructors."""

    def test_generic_a_value(self):
        """Test A = q^N D."""
        assert Assignment.generic(2).a_value == Monomial.of(q=2, D=1)

    def test_dehomogenized(self):
        """Test D = 1."""
        asg = Assignment.dehomogenized(3)
        assert asg.D == ONE_MONOMIAL
        assert asg.a_value == Monomial.of(q=3)

    def test_ad_equals_bc(self):
        """Test AD = BC q^m with A = q^N D."""
        N, m = 2, 3
        asg = Assignment.ad_equals_bc(N, m)
        assert asg.a_value * asg.D == (asg.B * asg.C).shift_q(m)

    def test_a_equals_d(self):
        """Test that A = D forces N = 0."""
        asg = Assignment.a_equals_d()
        assert asg.N == 0
        assert asg.value(Mark.A) == asg.value(Mark.D)

    def test_special_points(self):
        """Test infinite and zero parameters."""
        asg = Assignment.b_c_infinite(1)
        assert asg.B is INFINITY and asg.C is INFINITY
        assert Assignment.zero_limit().a_value is ZERO
        assert shift_param(INFINITY, 5) is INFINITY
        assert format_param(ZERO) == "0"

    def test_negative_n(self):
        """Test that a negative N is rejected."""
        with pytest.raises(ValueError):
            Assignment.generic(-1)

    def test_describe(self):
        """Test the report-facing description."""
        assert Assignment.b_c_infinite(2).describe() == {
            "label": "B=C=inf", "N": 2, "A": "q^2", "B": "inf", "C": "inf", "D": "1",
        }


@pytest.mark.unit
class TestShiftedPairs:
    """Tests for the deformed parameters of L_q."""

    def test_bc_pair(self):
        """Test (u^(1), v^(1)) = (B q, C q) for the word BC."""
        assert shifted_pair((BC,), 1, Assignment.generic(0)) == (Monomial.of(q=1, B=1), Monomial.of(q=1, C=1))

    def test_position_out_of_range(self):
        """Test that positions outside the word are rejected."""
        with pytest.raises(IndexError):
            shifted_pair((BC,), 2, Assignment.generic(0))

    def test_pairs_cover_word(self):
        """Test one pair per letter."""
        assert len(shifted_pairs((BD, BC, AB), Assignment.generic(1))) == 3


@pytest.mark.unit
class TestShiftIdentities:
    """Exhaustive checks of the identities relating the exponent tables."""

    def test_two_letter_example(self):
        """Test the exponents of BD.AB and the pairs [Bq, Dq^-1], [Aq, Bq^2]."""
        word = (BD, AB)
        assert shift_table(word).shifts == ((1, 1, 2, -1), (1, 2, 1, -1))
        asg = Assignment.generic(1)
        assert shifted_pair(word, 1, asg) == (Monomial.of(q=1, B=1), Monomial.of(q=-1, D=1))
        assert shifted_pair(word, 2, asg) == (Monomial.of(q=2, D=1), Monomial.of(q=2, B=1))

    def test_infinite_parameter_absorbs_shift(self):
        """Test that B = infinity stays infinite after shifting."""
        assert shifted_pair((BD, AB), 1, Assignment.b_c_infinite(1))[0] is INFINITY

    @pytest.mark.parametrize("length", range(6))
    def test_increments_accumulate_to_steps(self, length):
        """Test that prefix sums of the increments reproduce the step rows."""
        for word in itertools.product(LETTERS, repeat=length):
            steps = shift_table(word).steps
            start = (0, word.count(Letter.CD), word.count(BD),
                     -sum(1 for letter in word if letter in (AB, Letter.AC, BC)))
            assert steps[0] == start
            running = start
            for j, letter in enumerate(word, start=1):
                running = tuple(x + y for x, y in zip(running, increment_vector(letter)))
                assert steps[j] == running, (word, j)

    def test_steps_match_shifts_on_present_marks(self):
        """Test that steps[j] and the L_q exponents agree on the marks of letter j."""
        for word in _all_words(4):
            table = shift_table(word)
            for j, letter in enumerate(word, start=1):
                for mark in letter.marks:
                    position = "ABCD".index(mark.value)
                    assert table.steps[j][position] == table.exponent(j, mark)

    def test_dual_exponents(self):
        """Test that the primed rows of tau(w) are the dual exponents of w."""
        for word in _all_words(4):
            k = len(word)
            primed = shift_table(tau(word)).primed
            for j in range(1, k + 1):
                assert primed[k - j] == dual_exponents(word, j), (word, j)

    def test_dual_exponents_single_letter(self):
        """Test the dual row of BC."""
        assert dual_exponents((BC,), 1) == (0, 1, 1, -1)

    def test_mirrored_rows_are_shifts_of_tau(self):
        """Test that w's mirrored row j is the shift row k + 1 - j of tau(w)."""
        for word in _all_words(4):
            k = len(word)
            table, dual = shift_table(word), shift_table(tau(word))
            for j in range(1, k + 1):
                assert table.mirrored[j - 1] == dual.shifts[k - j]

    @pytest.mark.parametrize("length", range(1, 6))
    def test_pole_freeness(self, length):
        """Test a_j >= 1 and d_j <= -1, both nondecreasing, on admissible words."""
        for word in enumerate_admissible(length):
            shifts = shift_table(word).shifts
            a_values = [row[0] for row in shifts]
            d_values = [row[3] for row in shifts]
            assert min(a_values) >= 1 and max(d_values) <= -1
            assert a_values == sorted(a_values)
            assert d_values == sorted(d_values)

    @pytest.mark.parametrize("N", [0, 1, 3])
    def test_mirror_identity(self, N):
        """Test AD / sigma(x)^[j] = x^(j) when AD = BC q^m(w)."""
        for word in _admissible_words(3):
            asg = Assignment.ad_equals_bc(N, m_of(word))
            product = asg.a_value * asg.D
            for j, letter in enumerate(word, start=1):
                for mark, direct in zip(letter.marks, shifted_pair(word, j, asg)):
                    assert product / mirrored_param(word, j, mark.sigma, asg) == direct, (word, j, mark)
