# Core simulation, configuration and workbench components
from .errors import (ConfigurationError, ConvergenceError, DatasetError, DatasetFormatError,
                     InvalidSequenceError, MissingDatasetError, NumericError, SynthesisError,
                     WorkbenchError)

__all__ = ['WorkbenchError', 'ConfigurationError', 'InvalidSequenceError', 'DatasetError',
           'MissingDatasetError', 'DatasetFormatError', 'NumericError', 'ConvergenceError',
           'SynthesisError']
