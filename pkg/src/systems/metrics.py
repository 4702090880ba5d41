"""
Continual-learning metrics on the accuracy matrix.
"""
import numpy as np

from objects.accuracy_matrix import AccuracyMatrix
from objects.classifier_params import ClassifierParams
from .quantum_classifier import Batch, as_arrays, predict_states


def test_accuracy(params: ClassifierParams, testset: Batch) -> float:
    """
    Fraction of correctly predicted labels.

    Raises:
        ValueError: If the test set is empty
    """
    states, labels = as_arrays(testset)
    predictions = predict_states(params, states)
    return int(np.sum(predictions == labels)) / labels.shape[0]


def acc(r: AccuracyMatrix) -> float:
    """
    Average accuracy over all tasks after the last one has been learned.

    Raises:
        ValueError: If the last row is incomplete
    """
    last = r.n_tasks - 1
    if not r.is_row_complete(last):
        raise ValueError("ACC needs the full last row of R")
    return float(np.mean(r.row(last)))


def bwt(r: AccuracyMatrix) -> float:
    """
    Backward transfer: mean over earlier tasks of R[last][i] - R[i][i].

    Raises:
        ValueError: If fewer than two tasks or required cells are missing
    """
    if r.n_tasks < 2:
        raise ValueError("BWT needs at least two tasks")
    last = r.n_tasks - 1
    changes = [r.get(last, i) - r.get(i, i) for i in range(last)]
    return float(np.mean(changes))
