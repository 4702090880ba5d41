"""
Unit tests for the accuracy matrix and the ACC/BWT metrics.
"""
import os
import sys
import unittest

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from objects.accuracy_matrix import AccuracyMatrix
from objects.classifier_params import ClassifierParams
from systems.dataset_generator import gen_task_ising
from systems import metrics
from systems.metrics import acc, bwt


def matrix_from_rows(rows):
    matrix = AccuracyMatrix(len(rows))
    for i, row in enumerate(rows):
        for j, value in enumerate(row):
            matrix.set(i, j, value)
    return matrix


class TestAccuracyMatrix(unittest.TestCase):
    """Test cases for AccuracyMatrix."""

    def test_upper_cells_are_undefined(self):
        matrix = AccuracyMatrix(3)
        with self.assertRaises(IndexError):
            matrix.set(0, 2, 0.5)
        with self.assertRaises(IndexError):
            matrix.get(1, 2)

    def test_unfilled_cell(self):
        with self.assertRaises(ValueError):
            AccuracyMatrix(2).get(1, 0)

    def test_range(self):
        with self.assertRaises(ValueError):
            AccuracyMatrix(2).set(0, 0, 1.2)

    def test_to_list(self):
        matrix = matrix_from_rows([[0.5], [0.25, 0.75]])
        self.assertEqual(matrix.to_list(), [[0.5], [0.25, 0.75]])
        self.assertEqual(AccuracyMatrix(2).to_list(), [[None], [None, None]])


class TestMetrics(unittest.TestCase):
    """Test cases for acc and bwt."""

    def test_acc_examples(self):
        self.assertEqual(acc(matrix_from_rows([[1.0], [1.0, 1.0]])), 1.0)
        self.assertAlmostEqual(acc(matrix_from_rows([[0.8], [0.9, 0.7]])), 0.8)

    def test_acc_needs_last_row(self):
        matrix = AccuracyMatrix(2)
        matrix.set(0, 0, 0.5)
        with self.assertRaises(ValueError):
            acc(matrix)

    def test_bwt_examples(self):
        self.assertAlmostEqual(bwt(matrix_from_rows([[0.8], [0.9, 0.7]])), 0.1)
        self.assertEqual(bwt(matrix_from_rows([[0.6], [0.3, 0.5], [0.6, 0.5, 0.9]])), 0.0)

    def test_bwt_needs_two_tasks(self):
        with self.assertRaises(ValueError):
            bwt(matrix_from_rows([[0.5]]))

    def test_bwt_ignores_off_diagonal_middle_rows(self):
        base = [[0.6], [0.3, 0.5], [0.7, 0.4, 0.9]]
        changed = [[0.6], [0.9, 0.5], [0.7, 0.4, 0.9]]
        self.assertEqual(bwt(matrix_from_rows(base)), bwt(matrix_from_rows(changed)))

    def test_multiples_of_test_size(self):
        rows = [[(k + 5 * i) / 112 for k in range(i + 1)] for i in range(3)]
        matrix = matrix_from_rows(rows)
        self.assertAlmostEqual(acc(matrix), sum(rows[-1]) / 3, places=15)


class TestTestAccuracy(unittest.TestCase):
    """Test cases for test_accuracy."""

    @classmethod
    def setUpClass(cls):
        cls.task = gen_task_ising(6, seed=40, n_qubits=3, n_samples=64, n_train=40)

    def test_complement_symmetry(self):
        params = ClassifierParams.random(3, 1, np.random.default_rng(9))
        flipped = ClassifierParams.unflatten(params.flatten(), 3, 1)
        flipped.w2 = params.w2[::-1].copy()
        flipped.b2 = params.b2[::-1].copy()
        a = metrics.test_accuracy(params, self.task.test)
        self.assertAlmostEqual(metrics.test_accuracy(flipped, self.task.test), 1.0 - a, places=12)

    def test_constant_prediction(self):
        params = ClassifierParams.zeros(3, 1)
        params.b2 = np.array([1.0, 0.0])
        labels = [s.label for s in self.task.test]
        self.assertAlmostEqual(metrics.test_accuracy(params, self.task.test), labels.count(0) / len(labels))

    def test_empty_set(self):
        with self.assertRaises(ValueError):
            metrics.test_accuracy(ClassifierParams.zeros(3, 1), [])


if __name__ == '__main__':
    unittest.main()
