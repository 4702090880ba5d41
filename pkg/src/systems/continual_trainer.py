"""
Sequential training over a task order with a continual-learning strategy.

One Adam state is kept for the whole sequence. Random streams are split so that
initialization, minibatch shuffling and memory/Fisher sample selection never
share draws; every strategy therefore follows the same trajectory on the first task.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import MissingDatasetError, NumericError
from core.experiment_config import StrategyConfig
from core.seeding import STREAM_INIT, STREAM_SELECT, STREAM_SHUFFLE, make_rng
from objects.accuracy_matrix import AccuracyMatrix
from objects.classifier_params import ClassifierParams
from objects.task_dataset import TaskDataset
from strategies import ContinualStrategy, create_strategy
from .adam_optimizer import AdamState, adam_update
from .gradient_system import loss_and_grad
from .metrics import acc, bwt, test_accuracy

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainingSettings:
    """Optimizer and schedule hyperparameters."""

    n_layers: int = 1
    lr: float = 0.1
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    batch_size: int = 10
    epochs_per_task: int = 1


@dataclass
class ClassifierState:
    """Parameters together with the optimizer state that updates them."""

    params: ClassifierParams
    adam: AdamState

    @classmethod
    def initial(cls, n_qubits: int, settings: TrainingSettings,
                rng: np.random.Generator) -> 'ClassifierState':
        """Random parameters and zeroed Adam moments."""
        params = ClassifierParams.random(n_qubits, settings.n_layers, rng)
        adam = AdamState.create(params.p, settings.lr, settings.beta1, settings.beta2, settings.eps)
        return cls(params, adam)


@dataclass(frozen=True)
class CurvePoint:
    """Test accuracy on one task after one training iteration."""

    epoch: int
    iteration: int
    task_id: int
    test_accuracy: float


@dataclass
class RunResult:
    """Outcome of one seed on one sequence."""

    seed: int
    matrix: AccuracyMatrix
    params: ClassifierParams
    history: List[CurvePoint] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    @property
    def acc(self) -> float:
        return acc(self.matrix)

    @property
    def bwt(self) -> Optional[float]:
        """None for single-task sequences."""
        return bwt(self.matrix) if self.matrix.n_tasks > 1 else None


@dataclass
class SequenceResult:
    """All seeds of one (sequence, strategy) pair and the selected run."""

    sequence: str
    strategy: str
    runs: List[RunResult]
    best: RunResult


def minibatches(n_samples: int, batch_size: int, rng: np.random.Generator) -> List[np.ndarray]:
    """Shuffled index batches covering every sample once; the last may be short."""
    order = rng.permutation(n_samples)
    return [order[i:i + batch_size] for i in range(0, n_samples, batch_size)]


def train_task(state: ClassifierState, task: TaskDataset, strategy: ContinualStrategy,
               rng: np.random.Generator, settings: TrainingSettings = TrainingSettings(),
               select_rng: Optional[np.random.Generator] = None,
               evaluate_on: Sequence[TaskDataset] = (),
               epoch_offset: int = 0, iteration_offset: int = 0
               ) -> Tuple[ClassifierState, List[CurvePoint]]:
    """
    Train on one task and hand the result to the strategy.

    Args:
        state: Parameters and Adam state carried over from earlier tasks
        task: Task to learn
        strategy: Strategy shaping each update direction
        rng: Shuffle stream for this task
        settings: Batch size, epochs and optimizer settings
        select_rng: Stream for memory / Fisher sample selection (defaults to rng)
        evaluate_on: Tasks already started; the current task is always evaluated too
        epoch_offset: Epoch number of this task's first epoch in the run
        iteration_offset: Iterations already performed in the run

    Returns:
        (new state, per-iteration test accuracies)

    Raises:
        NumericError: If a parameter becomes non-finite
    """
    evaluated = [t for t in evaluate_on if t.task_id != task.task_id] + [task]
    test_arrays = {t.task_id: t.arrays('test') for t in evaluated}
    states, labels = task.arrays('train')
    params, adam = state.params, state.adam
    history: List[CurvePoint] = []
    iteration = iteration_offset

    strategy.on_task_start(task)
    for epoch in range(settings.epochs_per_task):
        for indices in minibatches(labels.shape[0], settings.batch_size, rng):
            _, grad = loss_and_grad(params, (states[indices], labels[indices]))
            # Strategies reshape the raw gradient; Adam then steps along the result
            direction = strategy.update_direction(params, grad)
            adam, vector = adam_update(adam, params.flatten(), direction)
            bad = np.flatnonzero(~np.isfinite(vector))
            if bad.size:
                raise NumericError("Adam step produced a non-finite parameter",
                                   parameter_index=int(bad[0]))
            params = ClassifierParams.unflatten(vector, params.n_qubits, params.n_layers)
            iteration += 1
            for task_id, arrays in test_arrays.items():
                history.append(CurvePoint(epoch_offset + epoch, iteration, task_id,
                                          test_accuracy(params, arrays)))
        logger.debug("Task %d epoch %d done after %d iterations", task.task_id, epoch, iteration)

    # Memory and Fisher anchors are taken from the final parameters of this task
    strategy.on_task_end(params, task, select_rng if select_rng is not None else rng)
    return ClassifierState(params, adam), history


def run_seed(order: Sequence[int], strategy_config: StrategyConfig, seed: int,
             datasets: Mapping[int, TaskDataset],
             settings: TrainingSettings = TrainingSettings()) -> RunResult:
    """
    Train one freshly initialized classifier over the whole order.

    R[i][j] is filled with the test accuracy of the j-th task after the i-th.
    """
    first = datasets[order[0]]
    # Every role draws from its own stream keyed by (seed, stream, task); selection
    # draws made by a strategy leave the shuffle order of later tasks untouched
    state = ClassifierState.initial(first.n_qubits, settings, make_rng(seed, STREAM_INIT))
    strategy = create_strategy(strategy_config)
    matrix = AccuracyMatrix(len(order), list(order))
    history: List[CurvePoint] = []
    started: List[TaskDataset] = []
    iterations = 0

    for position, task_id in enumerate(order):
        task = datasets[task_id]
        state, points = train_task(
            state, task, strategy, make_rng(seed, STREAM_SHUFFLE, task_id), settings,
            select_rng=make_rng(seed, STREAM_SELECT, task_id), evaluate_on=started,
            epoch_offset=position * settings.epochs_per_task,
            iteration_offset=iterations)
        history.extend(points)
        if points:
            iterations = points[-1].iteration
        started.append(task)
        for j, done in enumerate(started):
            matrix.set(position, j, test_accuracy(state.params, done.arrays('test')))
        logger.info("[%s seed %d] after task %d: %s", strategy.get_name(), seed, task_id,
                    " ".join(f"{a:.3f}" for a in matrix.row(position)))

    return RunResult(seed, matrix, state.params, history, strategy.diagnostics())


def select_best(runs: Sequence[RunResult]) -> RunResult:
    """Run with the highest ACC, the earliest seed on ties."""
    if not runs:
        raise ValueError("No runs to select from")
    best = runs[0]
    for run in runs[1:]:
        if run.acc > best.acc:
            best = run
    return best


def run_sequence(order: Sequence[int], strategy_config: StrategyConfig, seeds: Sequence[int],
                 datasets: Mapping[int, TaskDataset],
                 settings: TrainingSettings = TrainingSettings()) -> SequenceResult:
    """
    Train one classifier per seed over the order and select the best by ACC.

    Raises:
        MissingDatasetError: If a task of the order has no dataset
    """
    for task_id in order:
        if task_id not in datasets:
            raise MissingDatasetError(task_id, f"<task {task_id} not loaded>")
    sequence = "".join(str(t) for t in order)
    runs = []
    for seed in seeds:
        run = run_seed(order, strategy_config, seed, datasets, settings)
        logger.info("[%s %s] seed %d: ACC=%.4f BWT=%s", sequence, strategy_config.kind, seed,
                    run.acc, "n/a" if run.bwt is None else f"{run.bwt:+.4f}")
        runs.append(run)
    best = select_best(runs)
    logger.info("[%s %s] selected seed %d (ACC=%.4f)", sequence, strategy_config.kind,
                best.seed, best.acc)
    return SequenceResult(sequence, strategy_config.kind, runs, best)
