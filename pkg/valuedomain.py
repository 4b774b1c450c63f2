"""
Exact value domains and the identity-testing engine.

Every quantity the engine computes lives in one of these substrates:

- ``Fraction`` for exact rationals,
- ``FpElem`` for residues modulo a large prime,
- ``LazyExpr`` for unexpanded rational expressions in q, B, C, D, z carrying a
  degree certificate (``DegCert``),
- ``BiSeries`` for power series in (q, z) truncated at fixed orders.

Equality of lazy expressions is decided by ``values_equal``: a deterministic
grid whose size follows the certified degrees (a proof), or random evaluation
over the rationals or modulo a prime.
"""
import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

from config import (
    DEFAULT_PRIME, DEFAULT_TRIALS, GRID_BUDGET, RANDOM_POINT_BITS, RESAMPLE_LIMIT, VARIABLES,
)
from errors import (
    GridTooLarge, MissingVariable, NonpositiveOrder, OrderMismatch, PoleAtPoint, PoleDetected,
)

logger = logging.getLogger(__name__)

Vector = Tuple[int, int, int, int, int]
ZERO_VECTOR: Vector = (0, 0, 0, 0, 0)
_INDEX = {name: i for i, name in enumerate(VARIABLES)}


def _vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _vmax(a: Vector, b: Vector) -> Vector:
    return tuple(max(x, y) for x, y in zip(a, b))


def _vscale(a: Vector, k: int) -> Vector:
    return tuple(k * x for x in a)


# finite field
#---------------------------------------------------------------------------------
class FpElem:
    """
    Residue modulo a prime.
    Integers and Fractions coerce automatically; inversion fails only at zero.
    """
    __slots__ = ("residue", "modulus")

    def __init__(self, value=0, modulus: int = DEFAULT_PRIME):
        if isinstance(value, FpElem):
            residue = value.residue
        elif isinstance(value, Fraction):
            if value.denominator % modulus == 0:
                raise ZeroDivisionError("denominator vanishes modulo p")
            residue = value.numerator * pow(value.denominator, -1, modulus)
        else:
            residue = int(value)
        self.residue = residue % modulus
        self.modulus = modulus

    def _coerce(self, other) -> "FpElem":
        if isinstance(other, FpElem):
            if other.modulus != self.modulus:
                raise ValueError("moduli differ")
            return other
        if isinstance(other, (int, Fraction)):
            return FpElem(other, self.modulus)
        return NotImplemented

    def inverse(self) -> "FpElem":
        if self.residue == 0:
            raise ZeroDivisionError("cannot invert zero")
        return FpElem(pow(self.residue, -1, self.modulus), self.modulus)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpElem(self.residue + other.residue, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpElem(self.residue - other.residue, self.modulus)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpElem(other.residue - self.residue, self.modulus)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FpElem(self.residue * other.residue, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return FpElem(-self.residue, self.modulus)

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FpElem(pow(self.residue, exponent, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, (int, Fraction)):
            try:
                return self.residue == FpElem(other, self.modulus).residue
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"FpElem({self.residue}, p={self.modulus})"

    def __str__(self):
        return str(self.residue)

#---------------------------------------------------------------------------------

# monomials
#---------------------------------------------------------------------------------
@dataclass(frozen=True)
class Monomial:
    """
    c * q^e0 * B^e1 * C^e2 * D^e3 * z^e4 with integer (possibly negative) exponents.
    The coefficient is a nonzero rational.
    """
    coeff: Fraction = Fraction(1)
    exps: Vector = ZERO_VECTOR

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("Monomial coefficient must be nonzero")
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def of(cls, coeff=1, **powers) -> "Monomial":
        """Build a monomial from keyword exponents, e.g. Monomial.of(q=2, B=1)."""
        exps = [0] * len(VARIABLES)
        for name, power in powers.items():
            exps[_INDEX[name]] = power
        return cls(Fraction(coeff), tuple(exps))

    def exponent(self, name: str) -> int:
        return self.exps[_INDEX[name]]

    @property
    def is_constant(self) -> bool:
        return self.exps == ZERO_VECTOR

    @property
    def is_one(self) -> bool:
        return self.is_constant and self.coeff == 1

    @property
    def variables(self) -> frozenset:
        return frozenset(name for name, e in zip(VARIABLES, self.exps) if e)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff * other.coeff, _vadd(self.exps, other.exps))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.coeff / other.coeff, _vsub(self.exps, other.exps))

    def __pow__(self, k: int) -> "Monomial":
        return Monomial(self.coeff ** k, _vscale(self.exps, k))

    def __neg__(self) -> "Monomial":
        return Monomial(-self.coeff, self.exps)

    def scaled(self, c) -> "Monomial":
        return Monomial(self.coeff * Fraction(c), self.exps)

    def shift_q(self, e: int) -> "Monomial":
        """Multiply by q^e."""
        return Monomial(self.coeff, _vadd(self.exps, (e, 0, 0, 0, 0)))

    def invert_q(self) -> "Monomial":
        """Substitute q -> 1/q."""
        exps = list(self.exps)
        exps[0] = -exps[0]
        return Monomial(self.coeff, tuple(exps))

    def split(self) -> Tuple[Vector, Vector]:
        """Exponent vectors (P, Q) with nonnegative entries and self = coeff * P / Q."""
        return tuple(max(e, 0) for e in self.exps), tuple(max(-e, 0) for e in self.exps)

    def positive_order(self) -> bool:
        """True iff this is a monomial of Q[[q, z]] without constant term."""
        q, b, c, d, z = self.exps
        return b == c == d == 0 and q >= 0 and z >= 0 and (q, z) != (0, 0)

    def evaluate(self, point: dict, lift=Fraction):
        value = lift(self.coeff)
        for name, e in zip(VARIABLES, self.exps):
            if e:
                value = value * point[name] ** e
        return value

    def __str__(self):
        parts = []
        if self.coeff != 1 or self.is_constant:
            parts.append(str(self.coeff))
        for name, e in zip(VARIABLES, self.exps):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        return "*".join(parts)


ONE_MONOMIAL = Monomial()


@lru_cache(maxsize=None)
def _factor_degree(m: Monomial) -> Vector:
    # 1/(1 - cP/Q) = Q/(Q - cP); the keyed factor is Q - cP
    return tuple(abs(e) for e in m.exps)

#---------------------------------------------------------------------------------

# degree certificates
#---------------------------------------------------------------------------------
@dataclass(frozen=True)
class DegCert:
    """
    Per-variable degree bounds for the formal numerator and denominator of an expression.

    The denominator is a product of keyed factors (the polynomials Q - cP of
    geometric nodes, combined by least common multiple under addition) and an
    opaque part (combined by product). With no keyed factors the rules reduce to
    add -> (max(n1+d2, n2+d1), d1+d2) and mul -> componentwise sums.
    """
    num: Vector = ZERO_VECTOR
    den: Vector = ZERO_VECTOR
    factors: Tuple[Tuple[Monomial, int], ...] = ()

    def factor_map(self) -> Dict[Monomial, int]:
        return dict(self.factors)

    @staticmethod
    def _keyed_degree(factors: Dict[Monomial, int]) -> Vector:
        total = ZERO_VECTOR
        for key, mult in factors.items():
            total = _vadd(total, _vscale(_factor_degree(key), mult))
        return total

    @property
    def den_total(self) -> Vector:
        return _vadd(self.den, self._keyed_degree(self.factor_map()))

    @staticmethod
    def _freeze(factors: Dict[Monomial, int]) -> Tuple[Tuple[Monomial, int], ...]:
        return tuple(sorted(factors.items(), key=lambda item: (item[0].exps, item[0].coeff)))

    def add(self, other: "DegCert") -> "DegCert":
        fa, fb = self.factor_map(), other.factor_map()
        lcm = dict(fa)
        for key, mult in fb.items():
            lcm[key] = max(lcm.get(key, 0), mult)
        lcm_deg = self._keyed_degree(lcm)
        left = _vadd(_vadd(self.num, _vsub(lcm_deg, self._keyed_degree(fa))), other.den)
        right = _vadd(_vadd(other.num, _vsub(lcm_deg, self._keyed_degree(fb))), self.den)
        return DegCert(_vmax(left, right), _vadd(self.den, other.den), self._freeze(lcm))

    def mul(self, other: "DegCert") -> "DegCert":
        merged = self.factor_map()
        for key, mult in other.factors:
            merged[key] = merged.get(key, 0) + mult
        return DegCert(_vadd(self.num, other.num), _vadd(self.den, other.den), self._freeze(merged))

    def inverse(self) -> "DegCert":
        return DegCert(self.den_total, self.num, ())

    def bound(self, name: str) -> int:
        return self.num[_INDEX[name]]

    def den_bound(self, name: str) -> int:
        return self.den_total[_INDEX[name]]

#---------------------------------------------------------------------------------

# lazy expressions
#---------------------------------------------------------------------------------
class LazyExpr:
    """
    Node of an expression DAG over Fraction constants, monomials and 1/(1 - monomial).
    Nodes are immutable; arithmetic operators build new nodes with their certificate.
    """
    __slots__ = ("op", "args", "payload", "cert", "variables", "_order")

    def __init__(self, op: str, args: tuple, payload, cert: DegCert, variables: frozenset):
        self.op = op
        self.args = args
        self.payload = payload
        self.cert = cert
        self.variables = variables
        self._order = None

    # constructors
    @classmethod
    def constant(cls, value) -> "LazyExpr":
        return cls("const", (), Fraction(value), DegCert(), frozenset())

    @classmethod
    def monomial(cls, m: Monomial) -> "LazyExpr":
        if m.is_constant:
            return cls.constant(m.coeff)
        positive, negative = m.split()
        return cls("mono", (), m, DegCert(positive, negative), m.variables)

    @classmethod
    def variable(cls, name: str) -> "LazyExpr":
        return cls.monomial(Monomial.of(**{name: 1}))

    @classmethod
    def geometric(cls, m: Monomial) -> "LazyExpr":
        """The expression 1/(1 - m)."""
        if m.is_constant:
            if m.coeff == 1:
                raise PoleDetected("geometric factor 1/(1 - 1)")
            return cls.constant(1 / (1 - m.coeff))
        _, negative = m.split()
        return cls("geom", (), m, DegCert(negative, ZERO_VECTOR, ((m, 1),)), m.variables)

    @staticmethod
    def lift(value) -> "LazyExpr":
        if isinstance(value, LazyExpr):
            return value
        if isinstance(value, Monomial):
            return LazyExpr.monomial(value)
        return LazyExpr.constant(value)

    def is_const(self, value=None) -> bool:
        return self.op == "const" and (value is None or self.payload == value)

    # arithmetic
    def __add__(self, other):
        other = LazyExpr.lift(other)
        if self.is_const(0):
            return other
        if other.is_const(0):
            return self
        if self.is_const() and other.is_const():
            return LazyExpr.constant(self.payload + other.payload)
        return LazyExpr("add", (self, other), None, self.cert.add(other.cert),
                        self.variables | other.variables)

    __radd__ = __add__

    def __neg__(self):
        if self.op == "const":
            return LazyExpr.constant(-self.payload)
        if self.op == "mono":
            return LazyExpr.monomial(-self.payload)
        if self.op == "neg":
            return self.args[0]
        return LazyExpr("neg", (self,), None, self.cert, self.variables)

    def __sub__(self, other):
        return self + (-LazyExpr.lift(other))

    def __rsub__(self, other):
        return LazyExpr.lift(other) + (-self)

    def __mul__(self, other):
        other = LazyExpr.lift(other)
        if self.is_const(0) or other.is_const(0):
            return LazyExpr.constant(0)
        if self.is_const(1):
            return other
        if other.is_const(1):
            return self
        if self.is_const() and other.is_const():
            return LazyExpr.constant(self.payload * other.payload)
        if self.op in ("const", "mono") and other.op in ("const", "mono"):
            return LazyExpr.monomial(self._as_monomial() * other._as_monomial())
        return LazyExpr("mul", (self, other), None, self.cert.mul(other.cert),
                        self.variables | other.variables)

    __rmul__ = __mul__

    def _as_monomial(self) -> Monomial:
        return Monomial(self.payload) if self.op == "const" else self.payload

    def inverse(self) -> "LazyExpr":
        if self.op == "const":
            if self.payload == 0:
                raise PoleDetected("division by the zero constant")
            return LazyExpr.constant(1 / self.payload)
        if self.op == "mono":
            return LazyExpr.monomial(ONE_MONOMIAL / self.payload)
        return LazyExpr("inv", (self,), None, self.cert.inverse(), self.variables)

    def __truediv__(self, other):
        return self * LazyExpr.lift(other).inverse()

    def __rtruediv__(self, other):
        return LazyExpr.lift(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return (self ** (-exponent)).inverse()
        result, base = LazyExpr.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # structure
    def topological(self) -> list:
        """Nodes in post-order (children before parents), each once."""
        if self._order is not None:
            return self._order
        order, seen, stack = [], set(), [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for child in node.args:
                if id(child) not in seen:
                    stack.append((child, False))
        self._order = order
        return order

    def size(self) -> int:
        return len(self.topological())

    def evaluate(self, point: dict, memo: Optional[dict] = None, restrict: Optional[frozenset] = None):
        """
        Evaluate at a point; see expr_eval.
        With ``restrict`` only nodes whose variables lie in it are evaluated and
        stored in ``memo`` (used to share work across grid branches).
        """
        lift = _lifter(point)
        values = {} if memo is None else memo
        for node in self.topological():
            key = id(node)
            if key in values:
                continue
            if restrict is not None and not node.variables <= restrict:
                continue
            values[key] = node._evaluate_here(point, values, lift)
        return values.get(id(self))

    def _evaluate_here(self, point, values, lift):
        try:
            if self.op == "const":
                return lift(self.payload)
            if self.op == "mono":
                return self.payload.evaluate(point, lift)
            if self.op == "geom":
                ratio = self.payload.evaluate(point, lift)
                if ratio == 1:
                    raise PoleAtPoint(f"1 - {self.payload} vanishes")
                return 1 / (1 - ratio)
            if self.op == "add":
                return values[id(self.args[0])] + values[id(self.args[1])]
            if self.op == "mul":
                return values[id(self.args[0])] * values[id(self.args[1])]
            if self.op == "neg":
                return -values[id(self.args[0])]
            if self.op == "inv":
                return 1 / values[id(self.args[0])]
        except ZeroDivisionError as exc:
            raise PoleAtPoint(str(exc)) from exc
        raise ValueError(f"Unknown node op: {self.op}")

    def __repr__(self):
        return f"LazyExpr({self.op}, size={self.size()}, vars={sorted(self.variables)})"


def _lifter(point: dict):
    for value in point.values():
        if isinstance(value, FpElem):
            modulus = value.modulus
            return lambda c: FpElem(c, modulus)
    return Fraction


def _normalize_point(point: dict) -> dict:
    return {name: value if isinstance(value, (Fraction, FpElem)) else Fraction(value)
            for name, value in point.items()}


def expr_eval(e: LazyExpr, point: dict):
    """
    Exact value of ``e`` at a point assignment of Rat or FpElem values.

    Raises:
        MissingVariable: If a free variable of ``e`` is unassigned.
        PoleAtPoint: If a denominator vanishes at the point.
    """
    missing = e.variables - set(point)
    if missing:
        raise MissingVariable(f"unassigned variables: {sorted(missing)}")
    return e.evaluate(_normalize_point(point))


def invert_q(e: LazyExpr) -> LazyExpr:
    """The substitution q -> 1/q, applied structurally."""
    rebuilt = {}
    for node in e.topological():
        if "q" not in node.variables:
            rebuilt[id(node)] = node
            continue
        args = [rebuilt[id(child)] for child in node.args]
        if node.op == "mono":
            new = LazyExpr.monomial(node.payload.invert_q())
        elif node.op == "geom":
            new = LazyExpr.geometric(node.payload.invert_q())
        elif node.op == "add":
            new = args[0] + args[1]
        elif node.op == "mul":
            new = args[0] * args[1]
        elif node.op == "neg":
            new = -args[0]
        else:
            new = args[0].inverse()
        rebuilt[id(node)] = new
    return rebuilt[id(e)]

#---------------------------------------------------------------------------------

# domains used by the evaluators
#---------------------------------------------------------------------------------
class LazyDomain:
    """Builds LazyExpr values; poles are detected by exact monomial comparison."""
    name = "lazy"

    def one(self):
        return LazyExpr.constant(1)

    def zero(self):
        return LazyExpr.constant(0)

    def constant(self, c):
        return LazyExpr.constant(c)

    def monomial(self, m: Monomial):
        return LazyExpr.monomial(m)

    def geometric(self, m: Monomial):
        return LazyExpr.geometric(m)


class PointDomain:
    """Evaluates immediately at a point, exactly over Q or modulo a prime."""

    def __init__(self, point: dict, prime: Optional[int] = None):
        if prime is None:
            self.name = "rational"
            self.lift = Fraction
        else:
            self.name = "modp"
            self.lift = lambda c: FpElem(c, prime)
        self.point = {name: self.lift(value) for name, value in point.items()}

    def one(self):
        return self.lift(1)

    def zero(self):
        return self.lift(0)

    def constant(self, c):
        return self.lift(c)

    def monomial(self, m: Monomial):
        try:
            return m.evaluate(self.point, self.lift)
        except ZeroDivisionError as exc:
            raise PoleAtPoint(str(m)) from exc

    def geometric(self, m: Monomial):
        ratio = self.monomial(m)
        if ratio == 1:
            raise PoleAtPoint(f"1 - {m} vanishes")
        return 1 / (1 - ratio)


LAZY = LazyDomain()

#---------------------------------------------------------------------------------

# identity testing
#---------------------------------------------------------------------------------
EQUAL = "Equal"
PROBABLY_EQUAL = "ProbablyEqual"
NOT_EQUAL = "NotEqual"


@dataclass
class EqualityVerdict:
    """Outcome of values_equal. ``witness`` is set only for NotEqual."""
    status: str
    mode: str
    witness: Optional[Dict[str, str]] = None
    evaluations: int = 0
    grid_size: int = 0

    @property
    def holds(self) -> bool:
        return self.status != NOT_EQUAL

    @property
    def proved(self) -> bool:
        return self.status == EQUAL


def _candidates(name: str) -> Iterator[int]:
    value = 2
    while True:
        # integers >= 2 are never 0, +-1 or roots of unity, so q^N != 1 holds
        yield value
        value += 1


def _format_point(point: dict) -> Dict[str, str]:
    return {name: str(value) for name, value in sorted(point.items())}


class _GridSearch:
    """Tree-shaped grid: each fixed prefix chooses its own non-pole points."""

    def __init__(self, diff: LazyExpr, order: list):
        self.diff = diff
        self.order = order
        self.point = {}
        self.evaluations = 0

    def run(self) -> Optional[dict]:
        result = self._descend(0, {})
        if result == "pole":
            raise PoleAtPoint("expression has no defined grid points")
        return result

    def _descend(self, level: int, memo: dict):
        name = self.order[level]
        need = self.diff.cert.bound(name) + 1
        limit = need + self.diff.cert.den_bound(name) + 1
        fixed = frozenset(self.order[:level + 1])
        last = level == len(self.order) - 1
        found = 0
        for tried, candidate in enumerate(_candidates(name)):
            if found >= need:
                break
            if tried >= limit:
                return "pole"
            self.point[name] = Fraction(candidate)
            branch = dict(memo)
            try:
                value = self.diff.evaluate(self.point, branch, restrict=fixed)
            except PoleAtPoint:
                logger.debug("grid point %s is a pole, skipping", _format_point(self.point))
                continue
            if last:
                self.evaluations += 1
                if value != 0:
                    return dict(self.point)
                found += 1
                continue
            outcome = self._descend(level + 1, branch)
            if outcome == "pole":
                continue
            if outcome is not None:
                return outcome
            found += 1
        del self.point[name]
        return None


def _grid_equal(diff: LazyExpr, grid_budget: int) -> EqualityVerdict:
    order = [name for name in VARIABLES if name in diff.variables]
    cardinality = math.prod(diff.cert.bound(name) + 1 for name in order)
    if cardinality > grid_budget:
        raise GridTooLarge(cardinality, grid_budget)
    logger.debug("grid over %s with %d points", order, cardinality)
    if not order:
        value = diff.evaluate({})
        status = EQUAL if value == 0 else NOT_EQUAL
        return EqualityVerdict(status, "grid", None if value == 0 else {}, 1, 1)
    search = _GridSearch(diff, order)
    witness = search.run()
    if witness is not None:
        return EqualityVerdict(NOT_EQUAL, "grid", _format_point(witness), search.evaluations, cardinality)
    return EqualityVerdict(EQUAL, "grid", None, search.evaluations, cardinality)


def _random_equal(diff: LazyExpr, mode: str, seed: int, trials: int, prime: int) -> EqualityVerdict:
    rng = random.Random(seed)
    names = [name for name in VARIABLES if name in diff.variables]
    evaluations = 0
    for _ in range(trials):
        for _ in range(RESAMPLE_LIMIT):
            if mode == "modp":
                # residues in [2, p-2] exclude q = 0, 1, -1
                point = {name: FpElem(rng.randint(2, prime - 2), prime) for name in names}
            else:
                point = {name: Fraction(rng.randint(2, 2 ** RANDOM_POINT_BITS)) for name in names}
            try:
                value = diff.evaluate(point)
            except PoleAtPoint:
                logger.debug("random point %s is a pole, resampling", _format_point(point))
                continue
            break
        else:
            raise PoleAtPoint(f"no pole-free point after {RESAMPLE_LIMIT} samples")
        evaluations += 1
        if value != 0:
            return EqualityVerdict(NOT_EQUAL, mode, _format_point(point), evaluations)
    return EqualityVerdict(PROBABLY_EQUAL, mode, None, evaluations)


def values_equal(lhs, rhs, mode: str = "grid", seed: int = 0, trials: int = DEFAULT_TRIALS,
                 prime: int = DEFAULT_PRIME, grid_budget: int = GRID_BUDGET) -> EqualityVerdict:
    """
    Decide whether two lazy expressions are the same rational function.

    Args:
        lhs, rhs: LazyExpr (or constants) over a common variable set.
        mode: "grid" (deterministic proof), "random-exact" or "modp".
        seed: seed for the random modes.
        trials: number of independent random points.
        prime: modulus for "modp".
        grid_budget: largest grid the deterministic mode may evaluate.

    Returns:
        EqualityVerdict: Equal (grid proof), ProbablyEqual or NotEqual with a witness.

    Raises:
        GridTooLarge: If the certified grid exceeds ``grid_budget``.
    """
    diff = LazyExpr.lift(lhs) - LazyExpr.lift(rhs)
    if mode == "grid":
        return _grid_equal(diff, grid_budget)
    if mode in ("random-exact", "modp"):
        return _random_equal(diff, mode, seed, trials, prime)
    raise ValueError(f"Invalid mode: {mode}")


def parity_class(F: LazyExpr, s: int, mode: str = "grid", **options) -> bool:
    """True iff F(1/q) = (-1)^s F(q) identically."""
    F = LazyExpr.lift(F)
    sign = 1 if s % 2 == 0 else -1
    verdict = values_equal(invert_q(F), sign * F, mode=mode, **options)
    return verdict.holds

#---------------------------------------------------------------------------------

# truncated bivariate series
#---------------------------------------------------------------------------------
class BiSeries:
    """
    Element of Q[[q, z]] modulo (q^(m_q+1), z^(m_z+1)).
    ``rows[i][j]`` is the coefficient of q^i z^j.
    """
    __slots__ = ("m_q", "m_z", "rows")

    def __init__(self, m_q: int, m_z: int = 0, rows=None):
        if m_q < 0 or m_z < 0:
            raise ValueError("truncation orders must be nonnegative")
        self.m_q = m_q
        self.m_z = m_z
        if rows is None:
            rows = [[Fraction(0)] * (m_z + 1) for _ in range(m_q + 1)]
        self.rows = tuple(tuple(Fraction(c) for c in row) for row in rows)

    @classmethod
    def zero(cls, m_q: int, m_z: int = 0) -> "BiSeries":
        return cls(m_q, m_z)

    @classmethod
    def constant(cls, c, m_q: int, m_z: int = 0) -> "BiSeries":
        rows = [[Fraction(0)] * (m_z + 1) for _ in range(m_q + 1)]
        rows[0][0] = Fraction(c)
        return cls(m_q, m_z, rows)

    @classmethod
    def one(cls, m_q: int, m_z: int = 0) -> "BiSeries":
        return cls.constant(1, m_q, m_z)

    @classmethod
    def from_q_coefficients(cls, coefficients, m_q: int) -> "BiSeries":
        rows = [[Fraction(0)] for _ in range(m_q + 1)]
        for i, c in enumerate(coefficients[:m_q + 1]):
            rows[i][0] = Fraction(c)
        return cls(m_q, 0, rows)

    @property
    def orders(self) -> Tuple[int, int]:
        return self.m_q, self.m_z

    def _check(self, other: "BiSeries"):
        if not isinstance(other, BiSeries):
            raise TypeError("expected BiSeries")
        if self.orders != other.orders:
            raise OrderMismatch(f"orders {self.orders} and {other.orders} differ")

    def _mutable(self):
        return [list(row) for row in self.rows]

    def coefficient(self, i: int, j: int = 0) -> Fraction:
        return self.rows[i][j]

    def q_coefficients(self) -> list:
        """Coefficients of the z^0 column."""
        return [row[0] for row in self.rows]

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.rows for c in row)

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._check(other)
        return BiSeries(self.m_q, self.m_z,
                        [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "BiSeries":
        return BiSeries(self.m_q, self.m_z, [[-c for c in row] for row in self.rows])

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __mul__(self, other) -> "BiSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        out = [[Fraction(0)] * (self.m_z + 1) for _ in range(self.m_q + 1)]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if not a:
                    continue
                for k in range(self.m_q - i + 1):
                    other_row = other.rows[k]
                    target = out[i + k]
                    for l in range(self.m_z - j + 1):
                        b = other_row[l]
                        if b:
                            target[j + l] += a * b
        return BiSeries(self.m_q, self.m_z, out)

    __rmul__ = __mul__

    def scale(self, c) -> "BiSeries":
        c = Fraction(c)
        return BiSeries(self.m_q, self.m_z, [[c * x for x in row] for row in self.rows])

    def shift(self, m: Monomial) -> "BiSeries":
        """Multiply by a monomial c * q^e * z^f with e, f >= 0."""
        e, f = m.exponent("q"), m.exponent("z")
        if e < 0 or f < 0 or m.exponent("B") or m.exponent("C") or m.exponent("D"):
            raise NonpositiveOrder(f"{m} is not a monomial of Q[[q, z]]")
        out = [[Fraction(0)] * (self.m_z + 1) for _ in range(self.m_q + 1)]
        for i in range(self.m_q + 1 - e):
            for j in range(self.m_z + 1 - f):
                out[i + e][j + f] = m.coeff * self.rows[i][j]
        return BiSeries(self.m_q, self.m_z, out)

    def div_one_minus(self, m: Monomial) -> "BiSeries":
        """Multiply by 1/(1 - m) for a monomial of positive order."""
        if not m.positive_order():
            raise NonpositiveOrder(f"{m} has no positive (q, z)-order")
        e, f, c = m.exponent("q"), m.exponent("z"), m.coeff
        out = self._mutable()
        for i in range(self.m_q + 1):
            for j in range(self.m_z + 1):
                if i >= e and j >= f:
                    out[i][j] += c * out[i - e][j - f]
        return BiSeries(self.m_q, self.m_z, out)

    def to_rows(self) -> list:
        """Coefficients as strings, indexed [q-power][z-power]."""
        return [[str(c) for c in row] for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return self.orders == other.orders and self.rows == other.rows

    def __hash__(self):
        return hash((self.m_q, self.m_z, self.rows))

    def __repr__(self):
        terms = []
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c:
                    terms.append(f"{c}*q^{i}*z^{j}")
        return f"BiSeries({' + '.join(terms) or '0'}; O(q^{self.m_q + 1}, z^{self.m_z + 1}))"


def series_op(a: BiSeries, b: Optional[BiSeries], op: str) -> BiSeries:
    """Apply add, mul or negate to truncated series."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "negate":
        return -a
    raise ValueError(f"Invalid series op: {op}")


def series_geom(ratio: Monomial, m_q: int, m_z: int = 0) -> BiSeries:
    """The truncation of sum_{i >= 1} ratio^i."""
    return BiSeries.one(m_q, m_z).shift(ratio).div_one_minus(ratio)
