"""
Error hierarchy shared by every app.

Each error carries the process exit code the management commands report
for it: 2 for bad input data or configuration, 3 for numerical failures.
"""


class ExitCode:
    SUCCESS = 0
    USAGE = 1
    DATA = 2
    NUMERIC = 3


class BTGFError(Exception):
    exit_code = ExitCode.DATA


# Data / configuration errors

class ConfigurationError(BTGFError):
    pass


class ShapeError(BTGFError):
    pass


class SymmetryError(BTGFError):
    pass


class InputError(BTGFError):
    pass


class ParameterError(BTGFError):
    pass


class DatasetError(BTGFError):
    """
    A dataset file could not be read or is inconsistent with its manifest.
    """

    def __init__(self, path, message, line=None):
        self.path = str(path)
        self.line = line
        location = f"{self.path}:{line}" if line is not None else self.path
        super().__init__(f"{location}: {message}")


# Numerical failures

class NumericError(BTGFError):
    exit_code = ExitCode.NUMERIC


class DegenerateColumnError(NumericError):
    """Raised when an embedding column has (near) zero norm: representation collapse."""


class DegenerateRowError(NumericError):
    pass


class DegenerateClusterError(NumericError):
    """Raised when a soft-assignment column sums to zero: empty-cluster collapse."""


class DomainError(NumericError):
    pass


class DivergenceError(NumericError):
    def __init__(self, message, epoch=None):
        self.epoch = epoch
        if epoch is not None:
            message = f"epoch {epoch}: {message}"
        super().__init__(message)


class BoundViolationError(NumericError):
    pass
