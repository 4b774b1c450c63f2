"""
Exception hierarchy for qdual.
Library modules raise these; only the command-line layer turns them into exit codes.
"""


class QDualError(Exception):
    """Base class for every error raised by the engine."""


# value domains
#---------------------------------------------------------------------------------
class PoleAtPoint(QDualError):
    """A denominator vanished while evaluating at a concrete point."""


class MissingVariable(QDualError):
    """An evaluation point does not assign a free variable of the expression."""


class GridTooLarge(QDualError):
    """The deterministic grid would exceed the configured evaluation budget."""

    def __init__(self, cardinality: int, budget: int):
        super().__init__(f"grid of {cardinality} points exceeds budget {budget}")
        self.cardinality = cardinality
        self.budget = budget


class OrderMismatch(QDualError, ValueError):
    """Series operands carry different truncation orders."""


class NonpositiveOrder(QDualError, ValueError):
    """A geometric ratio does not have positive (q, z)-order."""

#---------------------------------------------------------------------------------

# words and parameters
#---------------------------------------------------------------------------------
class ParseError(QDualError, ValueError):
    """Word text could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotAdmissible(QDualError, ValueError):
    """A word or augmented index is not admissible."""


class NotInH0(QDualError, ValueError):
    """A three-letter word is not in Q + y h x."""


class ZeroParameter(QDualError, ValueError):
    """The inversion transform needs invertible parameters."""

#---------------------------------------------------------------------------------

# evaluation
#---------------------------------------------------------------------------------
class PoleDetected(QDualError):
    """A parameter monomial coincides with a chain point."""


class NonconvergentSpec(QDualError):
    """A series summand does not gain order as the summation index grows."""


class StabilizationFailure(QDualError):
    """Adaptive cutoff hit its budget without two agreeing rounds."""


class NumericalInstability(QDualError):
    """Floating-point quadrature did not reach the requested accuracy."""
