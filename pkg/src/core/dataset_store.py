"""
DatasetStore for locating, loading and caching task datasets.
Each task lives in <data_dir>/task<N>.qcd with a JSON sidecar next to it.
"""
import logging
from pathlib import Path
from typing import Dict, Iterable, Optional, Union

from objects.task_dataset import TaskDataset
from systems.dataset_io import load_dataset, save_dataset
from .errors import DatasetError, MissingDatasetError

logger = logging.getLogger(__name__)

DATASET_SUFFIX = '.qcd'


class DatasetStore:
    """
    Manages the dataset files of a data directory.
    Loaded datasets are cached so every strategy and seed shares one copy.
    """

    def __init__(self, data_dir: Union[str, Path] = "data", n_qubits: Optional[int] = None):
        """
        Initialize the store.

        Args:
            data_dir: Directory holding task<N>.qcd files
            n_qubits: Expected qubit count; None accepts any
        """
        self.data_dir = Path(data_dir)
        self.n_qubits = n_qubits
        self.cache: Dict[int, TaskDataset] = {}

    def path_for(self, task_id: int) -> Path:
        """File path of a task's dataset."""
        return self.data_dir / f"task{task_id}{DATASET_SUFFIX}"

    def exists(self, task_id: int) -> bool:
        return self.path_for(task_id).exists()

    def require(self, task_ids: Iterable[int]) -> None:
        """
        Check that every listed task has a dataset file.

        Raises:
            MissingDatasetError: For the first missing task
        """
        for task_id in task_ids:
            if not self.exists(task_id):
                raise MissingDatasetError(task_id, str(self.path_for(task_id)))

    def load(self, task_id: int) -> TaskDataset:
        """
        Load a task dataset, using the cache when possible.

        Raises:
            MissingDatasetError: If the file does not exist
            DatasetFormatError: If the file is corrupt
            DatasetError: If the file belongs to another task or qubit count
        """
        if task_id in self.cache:
            return self.cache[task_id]

        path = self.path_for(task_id)
        if not path.exists():
            raise MissingDatasetError(task_id, str(path))
        dataset = load_dataset(path)
        if dataset.task_id != task_id:
            raise DatasetError(f"{path} holds task {dataset.task_id}, expected {task_id}")
        if self.n_qubits is not None and dataset.n_qubits != self.n_qubits:
            raise DatasetError(
                f"{path} holds {dataset.n_qubits}-qubit states, expected {self.n_qubits}")

        logger.debug("Loaded %r from %s", dataset, path)
        self.cache[task_id] = dataset
        return dataset

    def load_all(self, task_ids: Iterable[int]) -> Dict[int, TaskDataset]:
        """Load several tasks after checking they are all present."""
        task_ids = list(task_ids)
        self.require(task_ids)
        return {task_id: self.load(task_id) for task_id in task_ids}

    def save(self, dataset: TaskDataset, path: Optional[Union[str, Path]] = None) -> Path:
        """
        Store a dataset under its standard name (or an explicit path) and cache it.

        Returns:
            Path written
        """
        target = Path(path) if path is not None else self.path_for(dataset.task_id)
        save_dataset(dataset, target)
        if path is None:
            self.cache[dataset.task_id] = dataset
        return target

    def clear_cache(self) -> None:
        """Clear all cached datasets."""
        self.cache.clear()
