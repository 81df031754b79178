"""Exception hierarchy. Each class carries the CLI exit code it maps to."""

from __future__ import annotations


class GrobstrataError(Exception):
    exit_code = 1


class ConfigError(GrobstrataError, ValueError):
    exit_code = 2


class DimensionMismatch(ConfigError):
    pass


class AntichainViolation(GrobstrataError, ValueError):
    """Raised when one proposed corner divides another."""

    exit_code = 3

    def __init__(self, alpha, divisor):
        self.alpha = tuple(alpha)
        self.divisor = tuple(divisor)
        super().__init__(f"corner {self.divisor} divides corner {self.alpha}")


class ModeError(GrobstrataError, ValueError):
    exit_code = 4


class OrderTieError(ModeError):
    """A weight-matrix order failed to separate two distinct exponents."""

    def __init__(self, a, b):
        self.a, self.b = tuple(a), tuple(b)
        super().__init__(f"weight matrix does not separate {self.a} and {self.b}")


class TruncationTooSmall(ModeError):
    pass


class InternalInvariantViolation(GrobstrataError, RuntimeError):
    exit_code = 10


class NoWeightFound(InternalInvariantViolation):
    pass


class SubstitutionNonterminating(InternalInvariantViolation):
    pass
