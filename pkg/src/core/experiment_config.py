"""
Experiment configuration loaded from JSON.
Sections are read with defaults for every missing key; malformed files raise.
"""
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Union

from .errors import ConfigurationError, InvalidSequenceError

STRATEGY_KINDS = ('plain', 'ewc', 'gem')
TASK_IDS = '123456'
# Consolidation strength applied to every stored Fisher anchor
DEFAULT_EWC_LAMBDA = 10.0


@dataclass(frozen=True)
class StrategyConfig:
    """Settings of one continual-learning strategy. ewc_lambda only matters for 'ewc'."""

    kind: str = 'plain'
    ewc_lambda: float = DEFAULT_EWC_LAMBDA
    memory_size: int = 50
    fisher_samples: int = 50
    debug_checks: bool = False

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ConfigurationError(f"Unknown strategy '{self.kind}', expected one of {STRATEGY_KINDS}")
        if self.ewc_lambda < 0:
            raise ConfigurationError(f"ewc_lambda must be non-negative, got {self.ewc_lambda}")
        if self.memory_size < 1 or self.fisher_samples < 1:
            raise ConfigurationError("memory_size and fisher_samples must be positive")


@dataclass
class ExperimentConfig:
    """All knobs of a continual-learning run."""

    task_sequences: List[str] = field(default_factory=lambda: ['234561'])
    strategies: List[str] = field(default_factory=lambda: list(STRATEGY_KINDS))
    n_qubits: int = 8
    n_layers: int = 1
    lr: float = 0.1
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    batch_size: int = 10
    epochs_per_task: int = 1
    seeds: List[int] = field(default_factory=lambda: [1, 2, 3, 4, 5])
    ewc_lambda: float = DEFAULT_EWC_LAMBDA
    memory_size: int = 50
    fisher_samples: int = 50
    data_dir: str = 'data'
    out_dir: str = 'results'
    data_seed: int = 2024
    debug_mode: bool = False
    log_level: str = 'INFO'
    show_progress: bool = True

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Check value ranges and task sequences.

        Raises:
            ConfigurationError: On out-of-range values or unknown strategies
            InvalidSequenceError: On a sequence that is not distinct task ids 1..6
        """
        if not self.task_sequences:
            raise ConfigurationError("At least one task sequence is required")
        for sequence in self.task_sequences:
            validate_sequence(sequence)
        for kind in self.strategies:
            if kind not in STRATEGY_KINDS:
                raise ConfigurationError(f"Unknown strategy '{kind}'")
        if not self.seeds:
            raise ConfigurationError("At least one seed is required")
        if self.n_qubits < 1 or self.n_layers < 1:
            raise ConfigurationError("n_qubits and n_layers must be positive")
        if self.batch_size < 1:
            raise ConfigurationError(f"batch_size must be positive, got {self.batch_size}")
        if self.epochs_per_task < 0:
            raise ConfigurationError(f"epochs_per_task must be >= 0, got {self.epochs_per_task}")
        if self.lr <= 0:
            raise ConfigurationError(f"lr must be positive, got {self.lr}")

    def strategy_config(self, kind: str) -> StrategyConfig:
        """StrategyConfig for one strategy kind, sharing this run's settings."""
        return StrategyConfig(kind=kind, ewc_lambda=self.ewc_lambda, memory_size=self.memory_size,
                              fisher_samples=self.fisher_samples, debug_checks=self.debug_mode)

    def task_ids(self) -> List[int]:
        """Every task id referenced by any sequence, sorted."""
        return sorted({int(c) for sequence in self.task_sequences for c in sequence})

    def to_dict(self) -> Dict[str, Any]:
        """Flat dictionary snapshot."""
        return asdict(self)


def validate_sequence(sequence: str) -> List[int]:
    """
    Parse a task sequence such as '234561'.
    Prefix subsets (e.g. '23') are allowed for smoke runs.

    Returns:
        Task ids in order

    Raises:
        InvalidSequenceError: If a character is not a task id or repeats
    """
    if not isinstance(sequence, str) or not sequence:
        raise InvalidSequenceError(f"Task sequence must be a non-empty string, got {sequence!r}")
    if any(c not in TASK_IDS for c in sequence) or len(set(sequence)) != len(sequence):
        raise InvalidSequenceError(
            f"Task sequence '{sequence}' must use distinct task ids from {TASK_IDS}")
    return [int(c) for c in sequence]


def config_from_dict(data: Dict[str, Any]) -> ExperimentConfig:
    """
    Build a config from the sectioned JSON layout.

    Raises:
        ConfigurationError: If a section or value has the wrong type
    """
    if not isinstance(data, dict):
        raise ConfigurationError("Configuration root must be a JSON object")
    experiment = data.get('experiment', {})
    classifier = data.get('classifier', {})
    training = data.get('training', {})
    strategies = data.get('strategies', {})
    paths = data.get('paths', {})
    logging_section = data.get('logging', {})
    for name, section in (('experiment', experiment), ('classifier', classifier),
                          ('training', training), ('strategies', strategies),
                          ('paths', paths), ('logging', logging_section)):
        if not isinstance(section, dict):
            raise ConfigurationError(f"Section '{name}' must be a JSON object")

    defaults = ExperimentConfig()
    sequences = experiment.get('task_sequence', defaults.task_sequences)
    if isinstance(sequences, str):
        sequences = [sequences]
    try:
        return ExperimentConfig(
            task_sequences=list(sequences),
            strategies=list(strategies.get('enabled', defaults.strategies)),
            n_qubits=int(classifier.get('n_qubits', defaults.n_qubits)),
            n_layers=int(classifier.get('n_layers', defaults.n_layers)),
            lr=float(training.get('lr', defaults.lr)),
            beta1=float(training.get('beta1', defaults.beta1)),
            beta2=float(training.get('beta2', defaults.beta2)),
            eps=float(training.get('eps', defaults.eps)),
            batch_size=int(training.get('batch_size', defaults.batch_size)),
            epochs_per_task=int(training.get('epochs_per_task', defaults.epochs_per_task)),
            seeds=[int(s) for s in experiment.get('seeds', defaults.seeds)],
            ewc_lambda=float(strategies.get('ewc_lambda', defaults.ewc_lambda)),
            memory_size=int(strategies.get('memory_size', defaults.memory_size)),
            fisher_samples=int(strategies.get('fisher_samples', defaults.fisher_samples)),
            data_dir=str(paths.get('data_dir', defaults.data_dir)),
            out_dir=str(paths.get('out_dir', defaults.out_dir)),
            data_seed=int(experiment.get('data_seed', defaults.data_seed)),
            debug_mode=bool(experiment.get('debug_mode', defaults.debug_mode)),
            log_level=str(logging_section.get('level', defaults.log_level)),
            show_progress=bool(logging_section.get('show_progress', defaults.show_progress)),
        )
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid configuration value: {e}") from e


def load_config(config_path: Union[str, Path]) -> ExperimentConfig:
    """
    Load an experiment configuration file.

    Args:
        config_path: Path to the JSON file

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationError: If the file is missing, not JSON or holds invalid values
    """
    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigurationError(f"Config file not found: {config_path}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Config file {config_path} is not valid JSON: {e}") from e
    return config_from_dict(data)
