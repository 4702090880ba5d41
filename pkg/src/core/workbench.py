"""
Workbench tying datasets, training, persistence and figures together.
The command-line entry point calls one method per subcommand.
"""
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Union

from systems.continual_trainer import SequenceResult, TrainingSettings, run_sequence
from systems.curve_plotter import plot_results
from systems.dataset_generator import N_QUBITS, generate_task
from systems.results_manager import ResultsManager, format_report
from .dataset_store import DatasetStore
from .experiment_config import ExperimentConfig, validate_sequence

logger = logging.getLogger(__name__)


def generate_datasets(task_ids: Iterable[int], seed: int, data_dir: Union[str, Path],
                      n_qubits: int = N_QUBITS, out: Optional[Union[str, Path]] = None,
                      show_progress: bool = True) -> List[Path]:
    """
    Generate and store task datasets.

    Args:
        task_ids: Tasks to generate
        seed: Data seed shared by every task
        data_dir: Directory for task<N>.qcd files
        n_qubits: Qubit count of the states
        out: Explicit output path, only valid for a single task
        show_progress: Show tqdm bars

    Returns:
        Paths written

    Raises:
        ValueError: If `out` is given together with several tasks
    """
    task_ids = list(task_ids)
    if out is not None and len(task_ids) != 1:
        raise ValueError("An explicit output path needs exactly one task")
    store = DatasetStore(data_dir, n_qubits)
    written = []
    for task_id in task_ids:
        logger.info("Generating task %d (%d qubits, seed %d)", task_id, n_qubits, seed)
        dataset = generate_task(task_id, seed, n_qubits=n_qubits, show_progress=show_progress)
        written.append(store.save(dataset, out))
    return written


class Workbench:
    """
    Runs the configured experiment: every sequence with every strategy over the
    shared seed list.
    """

    def __init__(self, config: ExperimentConfig):
        """
        Initialize the workbench.

        Args:
            config: Validated experiment configuration
        """
        self.config = config
        self.store = DatasetStore(config.data_dir, config.n_qubits)
        self.results = ResultsManager(config.out_dir)
        self.settings = TrainingSettings(
            n_layers=config.n_layers, lr=config.lr, beta1=config.beta1, beta2=config.beta2,
            eps=config.eps, batch_size=config.batch_size, epochs_per_task=config.epochs_per_task)

    def run(self) -> List[SequenceResult]:
        """
        Train and persist every (sequence, strategy) pair.

        Raises:
            MissingDatasetError: Before any training if a referenced task file is absent
        """
        self.store.require(self.config.task_ids())
        datasets = self.store.load_all(self.config.task_ids())
        snapshot = self.config.to_dict()
        results = []
        for sequence in self.config.task_sequences:
            order = validate_sequence(sequence)
            for kind in self.config.strategies:
                logger.info("Running sequence %s with %s over seeds %s",
                            sequence, kind, self.config.seeds)
                result = run_sequence(order, self.config.strategy_config(kind),
                                      self.config.seeds, datasets, self.settings)
                self.results.save_sequence_result(result, snapshot)
                results.append(result)
        return results


def report(in_dir: Union[str, Path], reference: bool = False) -> str:
    """Table of ACC/BWT recomputed from the stored summaries."""
    entries = ResultsManager(in_dir).collect_report()
    if not entries:
        logger.warning("No results found in %s", in_dir)
    return format_report(entries, reference)


def plot(in_dir: Union[str, Path], out_dir: Union[str, Path],
         iterations_per_epoch: int = 40) -> List[Path]:
    """Write the curve figures of every stored run."""
    return plot_results(ResultsManager(in_dir), out_dir, iterations_per_epoch)
