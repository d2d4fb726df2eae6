"""Exception types shared across the package."""

from __future__ import annotations


class FracvelError(Exception):
    """Base class for all package errors."""


class DomainError(FracvelError, ValueError):
    """A function was evaluated outside its domain."""


class DepthError(FracvelError, ValueError):
    """Requested IFS depth exceeds the configured maximum."""


class ParamError(FracvelError, ValueError):
    """A parameter is outside the range where the operation is defined."""


class QuadratureError(FracvelError, ArithmeticError):
    """Quadrature failed to meet its internal error estimate."""


class DegenerateDerivative(FracvelError, ArithmeticError):
    """A finite-difference derivative overflowed or was not finite."""


class RuleInapplicable(FracvelError):
    """A constituent velocity of an algebra rule is not finite."""


class RatioUndefined(FracvelError):
    """The LFD / velocity ratio cannot be formed."""


class InsufficientData(FracvelError, ValueError):
    """Not enough samples to fit an exponent."""


class ParseError(FracvelError, ValueError):
    """Function expression could not be parsed.

    ``offset`` is the 0-based character offset of the failure and
    ``expected`` the set of tokens that would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        detail = f" (expected {exp})" if exp else ""
        super().__init__(f"{message} at offset {offset}{detail}")
