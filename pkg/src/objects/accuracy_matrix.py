"""
Accuracy matrix R with R[i][j] = test accuracy on the j-th task of a sequence
after learning the i-th task. Positions are zero-based; only j <= i is defined.
"""
from typing import List, Optional

import numpy as np


class AccuracyMatrix:
    """Lower-triangular bookkeeping of post-task test accuracies."""

    def __init__(self, n_tasks: int, task_ids: Optional[List[int]] = None):
        """
        Initialize an empty matrix.

        Args:
            n_tasks: Number of tasks N_t in the sequence
            task_ids: Task ids in sequence order, for reporting
        """
        if n_tasks < 1:
            raise ValueError(f"n_tasks must be positive, got {n_tasks}")
        self.n_tasks = n_tasks
        self.task_ids = list(task_ids) if task_ids is not None else list(range(1, n_tasks + 1))
        self.r = np.full((n_tasks, n_tasks), np.nan)

    def _check(self, i: int, j: int) -> None:
        if not (0 <= j <= i < self.n_tasks):
            raise IndexError(f"R[{i}][{j}] is outside the lower triangle of a "
                             f"{self.n_tasks}-task matrix")

    def set(self, i: int, j: int, accuracy: float) -> None:
        """Record the accuracy on task position j after learning position i."""
        self._check(i, j)
        if not 0.0 <= accuracy <= 1.0:
            raise ValueError(f"Accuracy must be in [0, 1], got {accuracy}")
        self.r[i, j] = accuracy

    def get(self, i: int, j: int) -> float:
        """
        Read R[i][j].

        Raises:
            IndexError: If the cell is outside the lower triangle
            ValueError: If the cell was never filled
        """
        self._check(i, j)
        value = self.r[i, j]
        if np.isnan(value):
            raise ValueError(f"R[{i}][{j}] has not been filled")
        return float(value)

    def row(self, i: int) -> List[float]:
        """Accuracies after learning position i, for positions 0..i."""
        return [self.get(i, j) for j in range(i + 1)]

    def diagonal(self) -> List[float]:
        """R[i][i] for every position."""
        return [self.get(i, i) for i in range(self.n_tasks)]

    def is_row_complete(self, i: int) -> bool:
        """True once R[i][0..i] are all filled."""
        return not np.any(np.isnan(self.r[i, :i + 1]))

    def to_list(self) -> List[List[Optional[float]]]:
        """Nested lists with None for undefined cells."""
        return [[None if np.isnan(v) else float(v) for v in self.r[i, :i + 1]]
                for i in range(self.n_tasks)]
