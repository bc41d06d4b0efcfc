"""Exception hierarchy shared by all selectis modules.

Every library error derives from :class:`SelectisError`, so callers (in
particular the CLI) can map any library failure onto the documented exit
codes without enumerating modules.
"""


class SelectisError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatch(SelectisError):
    """Operands live in different truncated rings (q or precision differ)."""


class NonUnitInverse(SelectisError):
    """Inversion of a scalar that is divisible by the uniformizer."""


class NonInvertibleMatrix(SelectisError):
    """Matrix inversion requested but the determinant is not a unit."""


class NonInvertibleConjugator(NonInvertibleMatrix):
    """Conjugation by a matrix whose determinant is not a unit."""


class DimensionMismatch(SelectisError):
    """Matrix/vector dimensions are incompatible for the operation."""


class WrongDimension(SelectisError):
    """An operation restricted to a fixed dimension got another one."""


class NotAHomomorphism(SelectisError):
    """Candidate embedding matrices violate the order's multiplication."""


class InvalidOrder(SelectisError):
    """Structure constants fail the identity/commutativity/associativity axioms."""


class SizeGuardExceeded(SelectisError):
    """Requested enumeration is larger than the configured desk-scale guard."""


class OutOfRangeVector(SelectisError):
    """Group element coordinates outside the ambient cyclic ranges."""


class MissingFrobenius(SelectisError):
    """A ramified prime lacks splitting data required by the decision."""


class InconsistentInstance(SelectisError):
    """Supplied global data contradicts itself and is rejected, not guessed at."""
