"""
Gradient episodic memory.

Each finished task leaves a memory of training samples. During later tasks the
minibatch gradient is projected so that, to first order, no memory loss increases.
"""
import logging
from typing import Any, Dict, List

import numpy as np

from core.experiment_config import StrategyConfig
from objects.classifier_params import ClassifierParams
from objects.episodic_memory import EpisodicMemory
from objects.task_dataset import TaskDataset
from systems.gradient_system import loss_and_grad
from systems.nnqp_solver import KKT_TOLERANCE, gem_project
from systems.quantum_classifier import loss
from .strategy import ContinualStrategy, select_training_samples

logger = logging.getLogger(__name__)


def memory_loss(params: ClassifierParams, memory: EpisodicMemory) -> float:
    """
    Mean cross-entropy over a memory's samples.

    Raises:
        ValueError: If the memory is empty
    """
    if memory.is_empty():
        raise ValueError(f"Memory for task {memory.task_id} is empty")
    return loss(params, memory.samples)


def memory_grad(params: ClassifierParams, memory: EpisodicMemory) -> np.ndarray:
    """Gradient of memory_loss."""
    if memory.is_empty():
        raise ValueError(f"Memory for task {memory.task_id} is empty")
    return loss_and_grad(params, memory.samples)[1]


class GEMStrategy(ContinualStrategy):
    """Projection of the task gradient against stored memories."""

    def __init__(self, config: StrategyConfig):
        super().__init__(config)
        self.memories: List[EpisodicMemory] = []
        self.iterations = 0
        self.projections = 0
        self.min_margin = float('inf')

    def update_direction(self, params: ClassifierParams, task_grad: np.ndarray) -> np.ndarray:
        self.iterations += 1
        if not self.memories:
            return task_grad
        memory_grads = [memory_grad(params, memory) for memory in self.memories]
        direction = gem_project(task_grad, memory_grads, check_kkt=self.config.debug_checks)
        if direction is not task_grad:
            self.projections += 1
        margin = min(float(np.dot(direction, g)) for g in memory_grads)
        self.min_margin = min(self.min_margin, margin)
        if self.config.debug_checks:
            assert margin >= -KKT_TOLERANCE, f"Projected gradient violates a memory constraint by {margin:.3e}"
        return direction

    def on_task_end(self, params: ClassifierParams, task: TaskDataset,
                    rng: np.random.Generator) -> None:
        samples = select_training_samples(task, self.config.memory_size, rng)
        self.memories.append(EpisodicMemory(task.task_id, samples, self.config.memory_size))
        self.tasks_seen += 1
        logger.debug("Stored %d-sample memory for task %d", len(samples), task.task_id)

    def diagnostics(self) -> Dict[str, Any]:
        info = super().diagnostics()
        info.update({
            'iterations': self.iterations,
            'projected_iterations': self.projections,
            'min_constraint_margin': None if self.min_margin == float('inf') else self.min_margin,
        })
        return info
