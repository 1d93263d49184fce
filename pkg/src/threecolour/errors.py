"""Exception types shared across the package."""


class ThreeColourError(Exception):
    """Base class for every error raised by this package."""


class SizeGuardError(ThreeColourError):
    """Requested size exceeds the brute-force guard."""


class NotDivisible(ThreeColourError, ArithmeticError):
    """Exact division left a nonzero remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class Inconsistent(ThreeColourError, ArithmeticError):
    """A linear system has no solution."""


class ValuationMismatch(ThreeColourError, ArithmeticError):
    """An expression vanishes (or blows up) to an unexpected order."""

    def __init__(self, message, valuation=None):
        super().__init__(message)
        self.valuation = valuation


class AmbiguousNormalization(ThreeColourError):
    """A normalization condition does not single out one solution."""


class NotMonic(ThreeColourError):
    pass


class NonIntegerCoefficient(ThreeColourError):
    pass


class NegativeCoefficient(ThreeColourError):
    pass


class DegenerateCoefficient(ThreeColourError):
    """A recursion coefficient vanished identically."""


class NomeOutOfRange(ThreeColourError, ValueError):
    pass


class ZeroArgument(ThreeColourError, ValueError):
    pass


class PoleProximity(ThreeColourError, ArithmeticError):
    """A denominator came too close to zero for a trustworthy value."""


class IdentityViolation(ThreeColourError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class NoPositiveRoot(ThreeColourError, ValueError):
    pass


class NonPositiveEvaluation(ThreeColourError, ValueError):
    pass


class InvalidASM(ThreeColourError, ValueError):
    pass


class InvalidBoard(ThreeColourError, ValueError):
    pass
