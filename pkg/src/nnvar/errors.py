"""Exception hierarchy shared by every module of the package."""


class NNError(Exception):
    """Base class for all errors raised by nnvar."""


class RangeError(NNError, ArithmeticError):
    """A result left the finite positive range of float64."""


class ZeroDivisorError(NNError, ZeroDivisionError):
    """Non-Newtonian division by the multiplicative zero (the number 1)."""


class DomainError(NNError, ValueError):
    """An operand or evaluation point lies outside the admissible domain."""


class InvariantError(NNError, ValueError):
    """A type invariant (positivity, identity at s=1, flags, ...) is violated."""


class ContractError(NNError, ValueError):
    """A precondition of an operation does not hold."""


class ParseError(NNError, ValueError):
    """Syntax error in an expression, with position and expected tokens."""

    def __init__(self, message, source="", pos=0, expected=()):
        self.source = source
        self.pos = pos
        self.line, self.column = _line_col(source, pos)
        self.expected = tuple(sorted(set(expected)))
        text = f"{self.line}:{self.column}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


class UnknownIdentifierError(ParseError):
    """An identifier is neither a known constant, function nor allowed variable."""


class ConfigError(NNError, ValueError):
    """Malformed or inconsistent problem configuration."""


class ConvergenceError(NNError, RuntimeError):
    """Newton iteration did not reach the requested tolerance."""

    def __init__(self, message, residual=float("nan"), iterations=0):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"{message} (last residual {residual:.3e} after {iterations} iterations)")


class DegenerateProblemError(NNError, ArithmeticError):
    """Singular Jacobian or degenerate transformation."""


def _line_col(source, pos):
    before = source[:pos]
    line = before.count("\n") + 1
    column = pos - (before.rfind("\n") + 1) + 1
    return line, column
