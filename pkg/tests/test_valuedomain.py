"""
Unit tests for the exact value domains and identity testing.
"""
import random
from fractions import Fraction

import pytest
import sympy

from config import DEFAULT_PRIME
from errors import GridTooLarge, MissingVariable, NonpositiveOrder, OrderMismatch, PoleAtPoint, PoleDetected
from valuedomain import (
    EQUAL, LAZY, NOT_EQUAL, PROBABLY_EQUAL, BiSeries, FpElem, LazyExpr, Monomial, PointDomain, expr_eval, invert_q,
    parity_class, series_geom, series_op, values_equal,
)

Q = Monomial.of(q=1)
Q_INV = Monomial.of(q=-1)


def R(m: Monomial) -> LazyExpr:
    return LazyExpr.geometric(m)


@pytest.mark.unit
class TestFpElem:
    """Tests for residues modulo a prime."""

    def test_arithmetic(self):
        """Test multiplication and division mod 7."""
        assert FpElem(3, 7) * FpElem(5, 7) == 1
        assert FpElem(1, 7) / FpElem(2, 7) == 4

    def test_fraction_coercion(self):
        """Test that a Fraction maps to numerator times inverse denominator."""
        assert FpElem(Fraction(1, 2), 7) == 4
        assert FpElem(2, 7) + Fraction(1, 2) == 6

    def test_inverse_of_zero(self):
        """Test that zero has no inverse."""
        with pytest.raises(ZeroDivisionError):
            FpElem(0, 7).inverse()

    def test_negative_power(self):
        """Test negative exponents invert."""
        assert FpElem(3, 7) ** -1 == 5


@pytest.mark.unit
class TestMonomial:
    """Tests for monomials."""

    def test_str(self):
        """Test the printed form."""
        assert str(Monomial.of(3, q=2, B=-1)) == "3*q^2*B^-1"
        assert str(Monomial.of()) == "1"

    def test_zero_coefficient_rejected(self):
        """Test that a zero coefficient is not a monomial."""
        with pytest.raises(ValueError):
            Monomial.of(0, q=1)

    def test_shift_and_invert(self):
        """Test q-shifts and q -> 1/q."""
        m = Monomial.of(2, q=1, D=1)
        assert m.shift_q(-3) == Monomial.of(2, q=-2, D=1)
        assert m.invert_q() == Monomial.of(2, q=-1, D=1)

    def test_positive_order(self):
        """Test membership in the maximal ideal of Q[[q, z]]."""
        assert Q.positive_order()
        assert Monomial.of(5, z=1).positive_order()
        assert not Q_INV.positive_order()
        assert not Monomial.of(q=1, B=1).positive_order()
        assert not Monomial.of(7).positive_order()

    def test_evaluate(self):
        """Test exact evaluation with negative exponents."""
        m = Monomial.of(Fraction(1, 2), q=2, B=-1)
        assert m.evaluate({"q": Fraction(3), "B": Fraction(2)}) == Fraction(9, 4)


@pytest.mark.unit
class TestLazyExpr:
    """Tests for lazy expressions and their evaluation."""

    def test_geometric_value(self):
        """Test 1/(1 - q) at q = 2."""
        assert expr_eval(R(Q), {"q": 2}) == -1

    def test_constant_geometric_folds(self):
        """Test that 1/(1 - c) for a constant c is a constant node."""
        assert R(Monomial.of(3)).is_const(Fraction(-1, 2))

    def test_constant_pole(self):
        """Test that 1/(1 - 1) is detected structurally."""
        with pytest.raises(PoleDetected):
            R(Monomial.of(1))

    def test_missing_variable(self):
        """Test that unassigned variables are reported."""
        with pytest.raises(MissingVariable):
            expr_eval(R(Monomial.of(q=1, B=1)), {"q": 2})

    def test_pole_at_point(self):
        """Test evaluation at a pole."""
        with pytest.raises(PoleAtPoint):
            expr_eval(R(Q), {"q": 1})

    def test_arithmetic_matches_sympy(self):
        """Test a composite expression against sympy at a rational point."""
        q, B = sympy.symbols("q B")
        expr = R(Monomial.of(q=1, B=1)) * LazyExpr.variable("B") + 3 - R(Monomial.of(2, q=-2)) / LazyExpr.variable("q")
        oracle = B / (1 - q * B) + 3 - 1 / ((1 - 2 / q**2) * q)
        point = {"q": Fraction(3, 2), "B": Fraction(5)}
        expected = oracle.subs({q: sympy.Rational(3, 2), B: 5})
        value = expr_eval(expr, point)
        assert sympy.Rational(value.numerator, value.denominator) == expected

    def test_invert_q(self):
        """Test the substitution q -> 1/q."""
        assert expr_eval(invert_q(LazyExpr.monomial(Monomial.of(q=2))), {"q": 2}) == Fraction(1, 4)
        assert expr_eval(invert_q(R(Q)), {"q": 2}) == 2

    def test_int_operands(self):
        """Test that ints combine with lazy expressions on either side."""
        expr = 2 * R(Q) + 1
        assert expr_eval(expr, {"q": 3}) == 0


@pytest.mark.unit
class TestValuesEqual:
    """Tests for the identity-testing backends."""

    def test_reflection_identity_grid(self):
        """Test 1/(1 - q) = 1 - 1/(1 - 1/q) with a grid proof."""
        verdict = values_equal(R(Q), 1 - R(Q_INV), mode="grid")
        assert verdict.status == EQUAL
        assert verdict.proved

    def test_not_equal_has_witness(self):
        """Test that a false identity is refuted with a witness point."""
        verdict = values_equal(R(Q), R(Monomial.of(q=2)), mode="grid")
        assert verdict.status == NOT_EQUAL
        assert "q" in verdict.witness

    @pytest.mark.parametrize("mode", ["random-exact", "modp"])
    def test_random_modes(self, mode):
        """Test that the random backends report ProbablyEqual on a true identity."""
        verdict = values_equal(R(Q), 1 - R(Q_INV), mode=mode, seed=3)
        assert verdict.status == PROBABLY_EQUAL
        assert verdict.holds and not verdict.proved

    @pytest.mark.parametrize("mode", ["random-exact", "modp"])
    def test_random_modes_refute(self, mode):
        """Test that the random backends catch a false identity."""
        verdict = values_equal(R(Q), R(Monomial.of(q=2)), mode=mode, seed=3)
        assert verdict.status == NOT_EQUAL

    def test_constants(self):
        """Test comparison of constant expressions."""
        assert values_equal(LazyExpr.constant(Fraction(1, 2)), Fraction(1, 2)).status == EQUAL
        assert values_equal(LazyExpr.constant(1), 2).status == NOT_EQUAL

    def test_grid_budget(self):
        """Test that a grid over budget raises GridTooLarge."""
        with pytest.raises(GridTooLarge):
            values_equal(R(Q) * R(Q), R(Monomial.of(q=2)), mode="grid", grid_budget=1)

    def test_invalid_mode(self):
        """Test that an unknown backend is rejected."""
        with pytest.raises(ValueError):
            values_equal(R(Q), R(Q), mode="fuzzy")

    def test_parity_class(self):
        """Test even and odd classes of R identities."""
        odd = R(Q) - R(Q_INV)
        even = R(Q) * (1 - R(Q))
        assert parity_class(odd, 1)
        assert not parity_class(odd, 0)
        assert parity_class(even, 0)


@pytest.mark.unit
class TestPointDomain:
    """Tests for immediate evaluation."""

    def test_rational_point(self):
        """Test a geometric factor at a rational point."""
        domain = PointDomain({"q": 3})
        assert domain.geometric(Q) == Fraction(-1, 2)

    def test_modp_point(self):
        """Test evaluation modulo a prime."""
        domain = PointDomain({"q": 3}, prime=7)
        assert domain.geometric(Q) == FpElem(Fraction(-1, 2), 7)

    def test_pole(self):
        """Test that a vanishing 1 - m raises PoleAtPoint."""
        with pytest.raises(PoleAtPoint):
            PointDomain({"q": 1}).geometric(Q)

    def test_lazy_domain_agrees(self):
        """Test that the lazy domain evaluates to the point domain's value."""
        m = Monomial.of(2, q=1, B=-1)
        point = {"q": Fraction(5), "B": Fraction(3)}
        assert expr_eval(LAZY.geometric(m), point) == PointDomain(point).geometric(m)


@pytest.mark.unit
class TestBiSeries:
    """Tests for truncated bivariate series."""

    def test_geometric_series(self):
        """Test sum_{i >= 1} q^i."""
        assert series_geom(Q, 5).q_coefficients() == [0, 1, 1, 1, 1, 1]

    def test_div_one_minus_inverts(self):
        """Test (1 - q) / (1 - q) = 1."""
        one_minus_q = BiSeries.from_q_coefficients([1, -1], 6)
        assert one_minus_q.div_one_minus(Q) == BiSeries.one(6)

    def test_product_in_two_variables(self):
        """Test (1 + z)(1 + q z) truncated at z^1."""
        one = BiSeries.one(3, 1)
        left = one + one.shift(Monomial.of(z=1))
        right = one + one.shift(Monomial.of(q=1, z=1))
        product = series_op(left, right, "mul")
        assert product.coefficient(0, 0) == 1
        assert product.coefficient(0, 1) == 1
        assert product.coefficient(1, 1) == 1
        assert product.coefficient(1, 0) == 0

    def test_negate(self):
        """Test the negate op."""
        assert series_op(BiSeries.one(2), None, "negate").coefficient(0) == -1

    def test_order_mismatch(self):
        """Test that series of different orders do not combine."""
        with pytest.raises(OrderMismatch):
            BiSeries.one(3) + BiSeries.one(4)

    def test_shift_rejects_negative_order(self):
        """Test that shifting by q^-1 is rejected."""
        with pytest.raises(NonpositiveOrder):
            BiSeries.one(3).shift(Q_INV)

    def test_div_rejects_constant(self):
        """Test that 1/(1 - 2) is not a series operation."""
        with pytest.raises(NonpositiveOrder):
            BiSeries.one(3).div_one_minus(Monomial.of(2))

    def test_to_rows(self):
        """Test the string serialization."""
        series = BiSeries.constant(Fraction(1, 3), 1, 1)
        assert series.to_rows() == [["1/3", "0"], ["0", "0"]]


SYM_Q, SYM_B = sympy.symbols("q B")
# no monomial c * q^a * B^b with c in 1..3 and |a|, |b| <= 1 equals 1 here
SAMPLE_POINT = {"q": Fraction(7, 3), "B": Fraction(5, 11)}


def _random_leaf(rng: random.Random):
    """A random constant, monomial, geometric factor or its reciprocal, with its sympy twin."""
    roll = rng.random()
    if roll < 0.25:
        c = Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3))
        return LazyExpr.constant(c), sympy.Rational(c.numerator, c.denominator)
    a, b = rng.randint(-1, 1), rng.randint(-1, 1)
    if a == b == 0:
        a = 1
    c = rng.randint(1, 3)
    m = Monomial.of(c, q=a, B=b)
    term = c * SYM_Q**a * SYM_B**b
    if roll < 0.5:
        return LazyExpr.monomial(m), term
    if roll < 0.85:
        return LazyExpr.geometric(m), 1 / (1 - term)
    # nonnegative exponents keep 1 - m away from zero on the integer grid
    m = Monomial.of(c, q=abs(a), B=abs(b))
    return LazyExpr.geometric(m).inverse(), 1 - c * SYM_Q**abs(a) * SYM_B**abs(b)


def _random_expr(rng: random.Random, depth: int):
    if depth == 0 or rng.random() < 0.3:
        return _random_leaf(rng)
    left, left_sym = _random_expr(rng, depth - 1)
    right, right_sym = _random_expr(rng, depth - 1)
    op = rng.choice(("add", "sub", "mul"))
    if op == "add":
        return left + right, left_sym + right_sym
    if op == "sub":
        return left - right, left_sym - right_sym
    return left * right, left_sym * right_sym


def _at_sample(sym):
    return sym.subs({SYM_Q: sympy.Rational(7, 3), SYM_B: sympy.Rational(5, 11)})


def _as_sympy(value: Fraction):
    return sympy.Rational(value.numerator, value.denominator)


@pytest.mark.unit
class TestFieldAxioms:
    """Randomized field laws for residues and lazy expressions."""

    @pytest.mark.parametrize("modulus", [101, DEFAULT_PRIME])
    def test_fp_field_laws(self, modulus):
        """Test associativity, commutativity, distributivity and inverses mod p."""
        rng = random.Random(modulus)
        for _ in range(200):
            a, b, c = (FpElem(rng.randrange(modulus), modulus) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a and a * b == b * a
            assert a * (b + c) == a * b + a * c
            assert a - a == 0
            if a != 0:
                assert a * a.inverse() == 1
                assert (b / a) * a == b

    @pytest.mark.parametrize("seed", range(10))
    def test_lazy_field_laws(self, seed):
        """Test the field laws on random lazy expressions at a rational point."""
        rng = random.Random(seed)
        (a, a_sym), (b, _), (c, _) = (_random_expr(rng, 2) for _ in range(3))

        def value(expr):
            return expr_eval(expr, SAMPLE_POINT)

        assert _as_sympy(value(a)) == _at_sample(a_sym)
        assert value((a + b) + c) == value(a + (b + c))
        assert value((a * b) * c) == value(a * (b * c))
        assert value(a * b) == value(b * a)
        assert value(a * (b + c)) == value(a * b + a * c)
        assert value(a - a) == 0
        if value(a) != 0:
            assert value(a / a) == 1


@pytest.mark.unit
class TestCertificates:
    """Degree certificates and the grid verdict against sympy's dense expansion."""

    @pytest.mark.parametrize("seed", range(25))
    def test_certificate_bounds_reduced_form(self, seed):
        """Test that the certified degrees bound the reduced numerator and denominator."""
        expr, sym = _random_expr(random.Random(seed), 3)
        numerator, denominator = sympy.fraction(sympy.cancel(sympy.together(sym)))
        for name, variable in (("q", SYM_Q), ("B", SYM_B)):
            assert sympy.degree(numerator, variable) <= expr.cert.bound(name)
            assert sympy.degree(denominator, variable) <= expr.cert.den_bound(name)

    @pytest.mark.parametrize("seed", range(20))
    def test_grid_verdict_matches_expansion(self, seed):
        """Test that the grid proves exactly the identities sympy cancels to zero."""
        rng = random.Random(1000 + seed)
        lhs, lhs_sym = _random_expr(rng, 2)
        other, other_sym = _random_expr(rng, 2)
        m = Monomial.of(rng.randint(2, 3), q=1, B=rng.randint(-1, 1))
        vanishing = LazyExpr.geometric(m) + LazyExpr.geometric(Monomial.of() / m) - 1
        if rng.random() < 0.5:
            rhs, rhs_sym = lhs + vanishing * other, lhs_sym
        else:
            rhs, rhs_sym = lhs + other, lhs_sym + other_sym
        verdict = values_equal(lhs, rhs, mode="grid")
        identical = sympy.cancel(lhs_sym - rhs_sym) == 0
        assert (verdict.status == EQUAL) == identical
        if not identical:
            assert verdict.witness is not None


@pytest.mark.unit
class TestSeriesRing:
    """Randomized ring laws for truncated bivariate series."""

    @staticmethod
    def _random_series(rng: random.Random, m_q: int = 4, m_z: int = 2) -> BiSeries:
        rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m_z + 1)] for _ in range(m_q + 1)]
        return BiSeries(m_q, m_z, rows)

    @pytest.mark.parametrize("seed", range(10))
    def test_ring_laws(self, seed):
        """Test commutativity, associativity and distributivity."""
        rng = random.Random(seed)
        a, b, c = (self._random_series(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * BiSeries.one(4, 2) == a
        assert (a - a).is_zero()
