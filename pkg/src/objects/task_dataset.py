"""
Labelled quantum-state samples and the per-task train/test dataset.
"""
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.statevector import Statevector


@dataclass(frozen=True)
class Sample:
    """One quantum state with a binary class label."""

    state: Statevector
    label: int

    def __post_init__(self):
        if self.label not in (0, 1):
            raise ValueError(f"Label must be 0 or 1, got {self.label}")


def stack_samples(samples: Sequence[Sample]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Stack samples into arrays.

    Args:
        samples: Non-empty sequence of samples with equal qubit counts

    Returns:
        (states of shape (batch, dim), labels of shape (batch,))

    Raises:
        ValueError: If the sequence is empty
    """
    if len(samples) == 0:
        raise ValueError("Cannot stack an empty list of samples")
    states = np.stack([sample.state.amps for sample in samples])
    labels = np.array([sample.label for sample in samples], dtype=np.int64)
    return states, labels


class TaskDataset:
    """
    A named binary classification task over quantum states.
    Holds the training and test splits plus the generator parameters in `meta`.
    """

    def __init__(self, task_id: int, train: List[Sample], test: List[Sample],
                 meta: Optional[Dict[str, Any]] = None):
        """
        Initialize the dataset.

        Args:
            task_id: Task number (1..6 for the standard roster)
            train: Training samples
            test: Test samples
            meta: Generator parameters (grid values, CE targets, seed)
        """
        self.task_id = task_id
        self.train = list(train)
        self.test = list(test)
        self.meta: Dict[str, Any] = dict(meta or {})
        self._arrays: Dict[str, Tuple[np.ndarray, np.ndarray]] = {}

    @property
    def n_qubits(self) -> int:
        """Qubit count of the stored states."""
        first = self.train[0] if self.train else self.test[0]
        return first.state.n_qubits

    def split(self, name: str) -> List[Sample]:
        """
        Get a split by name.

        Args:
            name: 'train' or 'test'

        Returns:
            List of samples
        """
        if name == 'train':
            return self.train
        if name == 'test':
            return self.test
        raise ValueError(f"Unknown split: {name}")

    def arrays(self, name: str) -> Tuple[np.ndarray, np.ndarray]:
        """Stacked (states, labels) of a split, cached after the first call."""
        if name not in self._arrays:
            self._arrays[name] = stack_samples(self.split(name))
        return self._arrays[name]

    def class_counts(self, name: str = 'train') -> Dict[int, int]:
        """Number of samples per label in a split."""
        labels = [sample.label for sample in self.split(name)]
        return {0: labels.count(0), 1: labels.count(1)}

    def __len__(self) -> int:
        return len(self.train) + len(self.test)

    def __repr__(self) -> str:
        return (f"TaskDataset(task_id={self.task_id}, train={len(self.train)}, "
                f"test={len(self.test)})")
