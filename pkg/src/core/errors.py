"""
Exception hierarchy for the workbench.
Every error carries the exit code the command line reports for it.
"""
from typing import Optional


class WorkbenchError(Exception):
    """Base class for all workbench failures."""

    exit_code = 1


class ConfigurationError(WorkbenchError):
    """Raised when an experiment configuration is missing or malformed."""

    exit_code = 2


class InvalidSequenceError(ConfigurationError):
    """Raised when a task sequence is not made of distinct task ids."""

    exit_code = 5


class DatasetError(WorkbenchError):
    """Raised when a dataset cannot be generated or read."""

    exit_code = 3


class MissingDatasetError(DatasetError):
    """Raised when a task dataset file is not present in the data directory."""

    def __init__(self, task_id: int, path: str):
        super().__init__(f"Dataset for task {task_id} not found: {path}")
        self.task_id = task_id
        self.path = path


class DatasetFormatError(DatasetError):
    """
    Raised when a dataset or checkpoint file violates its binary layout.
    The byte offset and, where relevant, the sample index are kept for reporting.
    """

    def __init__(self, message: str, offset: int, sample_index: Optional[int] = None):
        location = f"offset {offset}"
        if sample_index is not None:
            location = f"sample {sample_index}, {location}"
        super().__init__(f"{message} ({location})")
        self.offset = offset
        self.sample_index = sample_index


class NumericError(WorkbenchError):
    """Raised when a non-finite value shows up during training."""

    exit_code = 4

    def __init__(self, message: str, parameter_index: Optional[int] = None):
        if parameter_index is not None:
            message = f"{message} (parameter {parameter_index})"
        super().__init__(message)
        self.parameter_index = parameter_index


class ConvergenceError(NumericError):
    """Raised when an iterative solver stops before meeting its tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message}; residual {residual:.3e}")
        self.residual = residual


class SynthesisError(NumericError):
    """Raised when a target-entanglement state cannot be synthesized."""
    pass
