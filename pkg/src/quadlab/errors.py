"""Exception hierarchy shared by the quadlab modules."""


class QuadlabError(Exception):
    """Base class for all quadlab errors."""


class EvaluationError(QuadlabError, ArithmeticError):
    """An integrand or special function produced a non-finite value."""


class ConstructionError(QuadlabError, ValueError):
    """A rule could not be built (bad parameters or solver failure)."""


class DomainError(QuadlabError, ValueError):
    """An argument lies outside the supported domain of an operation."""


class PrecisionError(QuadlabError, ArithmeticError):
    """A high-precision reference computation failed to self-verify."""

    def __init__(self, message, values=()):
        super().__init__(message)
        self.values = tuple(values)


class ManifestError(QuadlabError, ValueError):
    """An experiment manifest is missing keys or carries unknown ones."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key
