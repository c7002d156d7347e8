"""Exception hierarchy shared by the estimators, comparators and CLI."""


class ResilienceError(Exception):
    """Base class for all package errors."""


class DomainError(ResilienceError, ValueError):
    """An argument lies outside the domain of a closed-form expression."""


class InvalidDataError(ResilienceError, ValueError):
    """Two-sample input is empty or contains non-finite values."""


class EstimationError(ResilienceError):
    """Base class for estimator failures that a simulation may count and skip."""


class NoFiniteRoot(EstimationError):
    """The partial likelihood score has no sign change on the admissible bracket."""


class DegenerateData(EstimationError):
    """All observations are tied, so the data carry no ordering information."""


class InfiniteTheta(EstimationError):
    """The estimated AUC is 1 (complete separation), so theta is unbounded."""


class DegenerateTau(EstimationError):
    """The estimated AUC is 0, so theta would be 0."""


class ZeroVariance(ResilienceError, ValueError):
    """A group is constant, so a moment fit of its scale is impossible."""


class DegenerateSeries(ResilienceError, ValueError):
    """A log-log diagnostic series has fewer than two usable points."""


class InputError(ResilienceError, ValueError):
    """Base class for problems in a score file."""


class MalformedRow(InputError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NonBinaryLabel(InputError):
    def __init__(self, line: int, label: str):
        super().__init__(f"line {line}: label must be 0 or 1, got {label!r}")
        self.line = line


class EmptyGroup(InputError):
    """One of the two groups has no records."""
