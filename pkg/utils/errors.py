"""
Exception hierarchy for the toolkit.

Library code raises these; only main.py turns them into exit codes.
"""
from typing import Optional


class ToolkitError(Exception):
    """Base class for every toolkit failure."""

    exit_code = 1


class InputError(ToolkitError):
    """Malformed or out-of-range input."""

    exit_code = 2


class PolynomialSyntaxError(InputError):
    """Polynomial text that does not follow the grammar."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class FieldMismatchError(InputError):
    """Operands live over different fields or in different variable counts."""


class NotHomogeneousError(InputError):
    """An operation needing a homogeneous polynomial got something else."""


class PointsFileError(InputError):
    """A points file line could not be read."""


class ConfigError(InputError):
    """Invalid configuration values."""


class PreconditionError(InputError):
    """Parameters outside an operation's documented range."""


class BudgetExceededError(ToolkitError):
    """A configurable work budget ran out before the computation finished."""

    exit_code = 3


class GroebnerBudgetExceeded(BudgetExceededError):
    """Buchberger or Mora reduction steps exceeded the budget."""

    def __init__(self, budget: int, basis_size: int = 0):
        self.budget = budget
        self.basis_size = basis_size
        super().__init__(
            f"Groebner budget of {budget} reduction steps exhausted "
            f"(basis size {basis_size})"
        )


class EnumerationBudgetExceeded(BudgetExceededError):
    """Too many field elements or points would have to be scanned."""


class ConstructionError(ToolkitError):
    """A randomized construction could not be verified within its retries."""

    exit_code = 4

    def __init__(self, message: str, seed: Optional[int] = None, retries: int = 0):
        self.seed = seed
        self.retries = retries
        super().__init__(f"{message} (seed={seed}, retries={retries})")


class MathematicalError(ToolkitError):
    """The input violates a mathematical hypothesis of the computation."""

    exit_code = 2


class NonIsolatedSingularityError(MathematicalError):
    """The singular locus has positive dimension."""


class FieldChangeRequired(MathematicalError):
    """The characteristic divides a degree the computation relies on."""


class BadPrimeError(MathematicalError):
    """Analyses at two different primes disagree."""
