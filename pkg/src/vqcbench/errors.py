"""Exception hierarchy shared by every module."""


class VqcBenchError(Exception):
    """Base class for all package errors."""


class ConfigurationError(VqcBenchError, ValueError):
    """Invalid sizes, indices, shapes or option values."""


class IngestionError(VqcBenchError):
    """A dataset file could not be parsed into a consistent matrix."""


class OptimizationError(VqcBenchError):
    """The objective returned a non-finite value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class TrainingError(VqcBenchError):
    """VQC training hit a non-finite cost."""

    def __init__(self, message, iteration=None):
        super().__init__(message)
        self.iteration = iteration
