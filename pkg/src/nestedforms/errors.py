class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


class FormatError(ValueError):
    """A textual form or matrix literal could not be parsed."""
