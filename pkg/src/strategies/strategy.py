"""
Base class for continual-learning strategies.
A strategy turns the current task gradient into the update direction handed to
the optimizer and keeps whatever it needs from finished tasks.
"""
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np

from core.experiment_config import StrategyConfig
from objects.classifier_params import ClassifierParams
from objects.task_dataset import Sample, TaskDataset


class ContinualStrategy(ABC):
    """Interface shared by the plain, EWC and GEM strategies."""

    def __init__(self, config: StrategyConfig):
        """
        Initialize the strategy.

        Args:
            config: Strategy settings
        """
        self.config = config
        self.name = config.kind
        self.tasks_seen = 0

    def on_task_start(self, task: TaskDataset) -> None:
        """Called before the first iteration of a task."""
        pass

    @abstractmethod
    def update_direction(self, params: ClassifierParams, task_grad: np.ndarray) -> np.ndarray:
        """
        Direction passed to the optimizer for one iteration.

        Args:
            params: Current parameters
            task_grad: Gradient of the current minibatch loss

        Returns:
            Vector of the same length as task_grad
        """
        pass

    @abstractmethod
    def on_task_end(self, params: ClassifierParams, task: TaskDataset,
                    rng: np.random.Generator) -> None:
        """
        Called once the task's training iterations are done.

        Args:
            params: Parameters at the end of the task
            task: The finished task
            rng: Generator for any sample selection
        """
        pass

    def diagnostics(self) -> Dict[str, Any]:
        """Per-run counters written next to the results."""
        return {'tasks_seen': self.tasks_seen}

    def get_name(self) -> str:
        return self.name


def select_training_samples(task: TaskDataset, count: int, rng: np.random.Generator) -> list:
    """
    Draw up to `count` distinct training samples, kept in draw order.
    """
    count = min(count, len(task.train))
    indices = rng.choice(len(task.train), size=count, replace=False)
    return [task.train[int(i)] for i in indices]
