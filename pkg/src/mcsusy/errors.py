"""Exception hierarchy."""


class MCError(Exception):
    """Base class for all package errors."""


class ModeMismatch(MCError):
    """Operands use different hbar modes (formal vs. hbar = 1)."""


class VacuumSquareOutsideIntegral(MCError):
    """A product of two Gaussian-carrying functions was requested for storage."""


class NonTerminatingStar(MCError):
    """Star product of two Gaussian-carrying functions (infinite series)."""


class EnvelopeUnsupported(MCError):
    """Operation is only defined on pure polynomials."""


class HbarFixedMode(MCError):
    """Operation needs formal hbar but the operand has hbar folded to 1."""


class DivergentIntegral(MCError):
    """Integral over phase space of a function without Gaussian envelope."""


class ConditionViolated(MCError):
    """Supercharge nilpotency conditions do not hold for the given inputs."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InternalMismatch(MCError):
    """Two independent constructions of the same object disagree."""


class BadKArgument(MCError):
    """The K function depends on variables it may not depend on."""


class IndexOutOfRange(MCError, ValueError):
    """Quantum numbers outside their allowed range."""


class UnsupportedK(MCError):
    """Command requires K = 0."""


class ParseError(MCError, ValueError):
    """Malformed expression or configuration text."""

    def __init__(self, message, line=None, column=None, token=None):
        where = ""
        if line is not None:
            where = f" (line {line}, column {column}"
            where += f", token {token!r})" if token is not None else ")"
        super().__init__(message + where)
        self.line = line
        self.column = column
        self.token = token


class UnknownKey(ParseError):
    """Configuration key not recognised."""


class BadExpression(ParseError):
    """Expression parses but is not a valid phase-space function here."""
