"""Exception hierarchy shared by all modules.

The CLI maps these onto stable exit codes: InputError -> 2,
DomainError -> 3, ConstructionError -> 4.
"""


class QuiverForgeError(Exception):
    pass


class InputError(QuiverForgeError):
    """Malformed or inconsistent user input (bad keys, bad shapes, bad files)."""


class DomainError(QuiverForgeError):
    """Input is well-formed but outside the mathematical domain of the operation."""


class ConstructionError(QuiverForgeError):
    """An internal assertion of the construction pipeline failed.

    Carries the construction trace accumulated so far, if any.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace
