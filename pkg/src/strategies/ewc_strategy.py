"""
Elastic weight consolidation.

Training task t minimizes L_t(theta) + lambda * sum_{k<t} sum_j F^k_j (theta_j - theta^k_j)^2,
where F^k is the empirical Fisher diagonal at the end of task k.
"""
import logging
from typing import Any, Dict, List, Sequence, Union

import numpy as np

from core.experiment_config import StrategyConfig
from objects.classifier_params import ClassifierParams
from objects.episodic_memory import FisherAnchor
from objects.task_dataset import Sample, TaskDataset
from systems.gradient_system import log_likelihood_grads
from systems.quantum_classifier import Batch, loss
from .strategy import ContinualStrategy, select_training_samples

logger = logging.getLogger(__name__)


def _flat(params: Union[ClassifierParams, np.ndarray]) -> np.ndarray:
    if isinstance(params, ClassifierParams):
        return params.flatten()
    return np.asarray(params, dtype=np.float64)


def estimate_fisher_diag(params: ClassifierParams, samples: Sequence[Sample]) -> np.ndarray:
    """
    Empirical Fisher diagonal F_j = mean_s (d log p(y_s|x_s) / d theta_j)^2
    using the true labels.

    Raises:
        ValueError: If no samples are given
    """
    grads = log_likelihood_grads(params, samples)
    return np.mean(grads ** 2, axis=0)


def ewc_penalty(params: Union[ClassifierParams, np.ndarray], anchors: Sequence[FisherAnchor],
                ewc_lambda: float) -> float:
    """lambda * sum_k sum_j F^k_j (theta_j - theta^k_j)^2."""
    theta = _flat(params)
    return ewc_lambda * sum(anchor.penalty(theta) for anchor in anchors)


def ewc_loss(params: ClassifierParams, batch: Batch, anchors: Sequence[FisherAnchor],
             ewc_lambda: float) -> float:
    """Task loss plus the consolidation penalty."""
    return loss(params, batch) + ewc_penalty(params, anchors, ewc_lambda)


def ewc_regularized_grad(params: Union[ClassifierParams, np.ndarray], task_grad: np.ndarray,
                         anchors: Sequence[FisherAnchor], ewc_lambda: float) -> np.ndarray:
    """
    task_grad + 2 lambda sum_k F^k * (theta - theta^k).
    With no anchors or lambda = 0 the task gradient is returned as is.
    """
    if not anchors or ewc_lambda == 0:
        return task_grad
    theta = _flat(params)
    pull = np.zeros_like(task_grad)
    for anchor in anchors:
        pull += anchor.fisher_diag * (theta - anchor.theta_star)
    return task_grad + 2.0 * ewc_lambda * pull


class EWCStrategy(ContinualStrategy):
    """Quadratic consolidation toward earlier task optima."""

    def __init__(self, config: StrategyConfig):
        super().__init__(config)
        self.anchors: List[FisherAnchor] = []
        self.penalty_history: List[float] = []

    def update_direction(self, params: ClassifierParams, task_grad: np.ndarray) -> np.ndarray:
        return ewc_regularized_grad(params, task_grad, self.anchors, self.config.ewc_lambda)

    def on_task_end(self, params: ClassifierParams, task: TaskDataset,
                    rng: np.random.Generator) -> None:
        if self.anchors:
            penalty = ewc_penalty(params, self.anchors, self.config.ewc_lambda)
            self.penalty_history.append(penalty)
            logger.info("EWC penalty at end of task %d: %.6f", task.task_id, penalty)
        samples = select_training_samples(task, self.config.fisher_samples, rng)
        fisher = estimate_fisher_diag(params, samples)
        self.anchors.append(FisherAnchor(task.task_id, params.flatten(), fisher))
        self.tasks_seen += 1
        logger.debug("Stored Fisher anchor for task %d (mean F = %.3e)", task.task_id, fisher.mean())

    def diagnostics(self) -> Dict[str, Any]:
        info = super().diagnostics()
        info.update({'ewc_lambda': self.config.ewc_lambda, 'penalty_history': self.penalty_history})
        return info
