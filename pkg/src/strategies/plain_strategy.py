"""
Plain sequential training: the task gradient is used unchanged.
"""
import numpy as np

from core.experiment_config import StrategyConfig
from objects.classifier_params import ClassifierParams
from objects.task_dataset import TaskDataset
from .strategy import ContinualStrategy


class PlainStrategy(ContinualStrategy):
    """No protection against forgetting."""

    def __init__(self, config: StrategyConfig = StrategyConfig(kind='plain')):
        super().__init__(config)

    def update_direction(self, params: ClassifierParams, task_grad: np.ndarray) -> np.ndarray:
        return task_grad

    def on_task_end(self, params: ClassifierParams, task: TaskDataset,
                    rng: np.random.Generator) -> None:
        self.tasks_seen += 1
