"""Exception hierarchy.

Two families: malformed *input text* (``ParseError``) and well-formed
input that violates a mathematical precondition (``DomainError``).  The
command line maps them to exit codes 2 and 1.
"""


class PlanarLagrangeError(ValueError):
    pass


class ParseError(PlanarLagrangeError):
    """Malformed text; ``offset`` is the byte offset of the problem, if known."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class DomainError(PlanarLagrangeError):
    pass


class InvalidPositionError(DomainError):
    pass


class InvalidSelectionError(DomainError):
    pass


class EnumerationLimitError(DomainError):
    pass


class NotLukError(DomainError):
    pass


class InvalidFlagError(DomainError):
    pass


class SeriesError(DomainError):
    pass
