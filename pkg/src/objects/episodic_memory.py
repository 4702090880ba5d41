"""
Per-task artifacts kept by the continual strategies.
"""
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .task_dataset import Sample

DEFAULT_MEMORY_SIZE = 50


@dataclass
class EpisodicMemory:
    """Stored subset M_k of one task's training samples."""

    task_id: int
    samples: List[Sample] = field(default_factory=list)
    capacity: int = DEFAULT_MEMORY_SIZE

    def __post_init__(self):
        if len(self.samples) > self.capacity:
            raise ValueError(
                f"Memory for task {self.task_id} holds {len(self.samples)} samples, "
                f"capacity is {self.capacity}")

    def is_empty(self) -> bool:
        return len(self.samples) == 0

    def __len__(self) -> int:
        return len(self.samples)


@dataclass
class FisherAnchor:
    """Optimal parameters theta^k of a finished task and the Fisher diagonal F^k there."""

    task_id: int
    theta_star: np.ndarray
    fisher_diag: np.ndarray

    def __post_init__(self):
        self.theta_star = np.asarray(self.theta_star, dtype=np.float64).copy()
        self.fisher_diag = np.asarray(self.fisher_diag, dtype=np.float64).copy()
        if self.theta_star.shape != self.fisher_diag.shape:
            raise ValueError("theta_star and fisher_diag must have the same shape")
        if np.any(self.fisher_diag < 0):
            raise ValueError("Fisher diagonal must be non-negative")

    def penalty(self, theta: np.ndarray) -> float:
        """sum_j F_j (theta_j - theta*_j)^2."""
        return float(np.sum(self.fisher_diag * (theta - self.theta_star) ** 2))
