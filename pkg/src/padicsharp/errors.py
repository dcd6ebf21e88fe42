"""Exception types shared across the package."""


class PadicSharpError(Exception):
    """Base class for all package errors."""


class ParameterError(PadicSharpError, ValueError):
    """A precondition on parameters is violated; the message names it."""


class DivergenceError(PadicSharpError, ArithmeticError):
    """An integral or series required to be finite diverges."""


class RepresentationError(PadicSharpError, ValueError):
    """A result exists but cannot be represented as a ShellFunction."""
