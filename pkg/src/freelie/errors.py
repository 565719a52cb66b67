"""Exception types shared across the package."""


class FreeLieError(Exception):
    """Base class for every domain error raised by this package."""


class AlphabetError(FreeLieError):
    """The alphabet is empty, has duplicates, or a letter name is unusable."""


class UnboundGeneratorError(FreeLieError):
    """A generator name does not belong to the alphabet."""


class FactorizationError(FreeLieError):
    """Standard factorization requested for a single letter."""


class RingMismatchError(FreeLieError):
    """Operands live over different rings or different alphabets."""


class CoefficientError(FreeLieError):
    """A scalar cannot be interpreted in the active coefficient ring."""


class ZeroElementError(FreeLieError):
    """Top component or weight requested for the zero element."""


class DivisionError(FreeLieError):
    """Invalid input to an exact shifted division (zero target or divisor)."""


class ShiftDistinctnessError(FreeLieError):
    """The shift scalars of a witness construction are not pairwise distinct."""


class InconsistentChainError(FreeLieError):
    """The alleged common value of a shifted-factor system does not match."""


class NotInL2Error(FreeLieError):
    """The element has a degree-1 component, so it is outside the bracket span."""


class DecompositionError(FreeLieError):
    """No bracket decomposition over the given generators exists.

    ``witness`` carries the first homogeneous piece that cannot be
    decomposed.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LineError(FreeLieError):
    """A scalar-line predicate was asked about the zero line."""


class OffLineError(FreeLieError):
    """An argument expected on the line ``R*x`` lies outside it."""


class WindowError(FreeLieError):
    """The divisibility window does not cover the required shifts."""


class BoundError(FreeLieError):
    """A quantifier lacks search bounds, or a degree bound is too small."""


class InstanceError(FreeLieError):
    """A bilinear instance is degenerate, not onto, or malformed."""


class CommutativeAlgebraError(FreeLieError):
    """A construction needs a non-commutative algebra (at least 2 generators)."""


class SizeGuardError(FreeLieError):
    """A brute-force search space exceeds the configured guard."""


class ConsistencyError(FreeLieError):
    """An internal invariant that the construction guarantees was violated."""


class ExprSyntaxError(FreeLieError):
    """Lexical or syntax error in an expression or formula string."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (column %d)" % (message, position + 1)
        super().__init__(message)
        self.position = position
