"""Exceptions raised across the package."""


class HopolyError(Exception):
    """Base class for all library errors."""


class MissingVariable(HopolyError, KeyError):
    def __init__(self, var):
        super().__init__(var)
        self.var = var

    def __str__(self):
        return f"variable {self.var!r} is not assigned"


class NotUnivariate(HopolyError, ValueError):
    pass


class DomainError(HopolyError, ValueError):
    """A concrete function or table violates monotonicity/totality."""


class UnknownNode(HopolyError, KeyError):
    pass


class GridTooSmall(HopolyError, ValueError):
    pass


class DuplicatePolynomials(HopolyError, ValueError):
    pass


class NoSeparatingPoint(HopolyError, ValueError):
    """Exhaustive grid scan found no separating point (grids below the bound)."""


class VerificationFailed(HopolyError, RuntimeError):
    """A constructed assignment failed its own post-check; indicates a bug."""


class DuplicateInputs(HopolyError, ValueError):
    pass


class ParseError(HopolyError, SyntaxError):
    def __init__(self, message, position=None, expected=()):
        self.position = position
        self.expected = tuple(expected)
        text = message
        if position is not None:
            text = f"{message} at position {position}"
        if expected:
            text += f" (expected one of: {', '.join(expected)})"
        super().__init__(text)


class OrderMismatch(ParseError):
    pass
