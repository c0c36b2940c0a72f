"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: DomainError -> 1, CapacityError -> 2,
ParseError -> 3.
"""


class WorkbenchError(Exception):
    pass


class DomainError(WorkbenchError, ValueError):
    """Input violates a precondition (empty domain, bad pair, unknown id...)."""


class CapacityError(WorkbenchError):
    """Instance is beyond desk scale for the configured caps."""


class ParseError(WorkbenchError, ValueError):
    def __init__(self, message, position=None):
        self.message = message
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position
