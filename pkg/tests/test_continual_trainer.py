"""
Unit tests for sequential training and seed selection.
"""
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_array_equal

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.errors import MissingDatasetError
from core.experiment_config import StrategyConfig
from core.seeding import STREAM_INIT, make_rng
from objects.accuracy_matrix import AccuracyMatrix
from objects.classifier_params import ClassifierParams
from strategies import create_strategy
from systems.continual_trainer import (ClassifierState, RunResult, TrainingSettings, minibatches,
                                       run_seed, run_sequence, select_best, train_task)
from systems.dataset_generator import gen_task_ising


def small_tasks():
    return {task_id: gen_task_ising(task_id, seed=30, n_qubits=3, n_samples=64, n_train=40)
            for task_id in (4, 5, 6)}


class TestMinibatches(unittest.TestCase):
    """Test cases for minibatch construction."""

    def test_covers_every_sample_once(self):
        batches = minibatches(400, 10, np.random.default_rng(0))
        self.assertEqual(len(batches), 40)
        self.assertEqual(sorted(np.concatenate(batches).tolist()), list(range(400)))

    def test_short_last_batch(self):
        batches = minibatches(25, 10, np.random.default_rng(0))
        self.assertEqual([len(b) for b in batches], [10, 10, 5])


class TestTrainTask(unittest.TestCase):
    """Test cases for train_task."""

    @classmethod
    def setUpClass(cls):
        cls.tasks = small_tasks()
        cls.settings = TrainingSettings(batch_size=10, epochs_per_task=2)

    def initial_state(self, seed=1):
        return ClassifierState.initial(3, self.settings, make_rng(seed, STREAM_INIT))

    def test_history_cadence(self):
        strategy = create_strategy(StrategyConfig(kind='plain'))
        state, history = train_task(self.initial_state(), self.tasks[5], strategy,
                                    np.random.default_rng(0), self.settings,
                                    evaluate_on=[self.tasks[4]], epoch_offset=2,
                                    iteration_offset=8)
        # 40 training samples, batch 10, 2 epochs, two evaluated tasks
        self.assertEqual(len(history), 8 * 2)
        self.assertEqual(history[0].iteration, 9)
        self.assertEqual(history[-1].iteration, 16)
        self.assertEqual({p.epoch for p in history}, {2, 3})
        self.assertEqual({p.task_id for p in history}, {4, 5})
        self.assertEqual(state.adam.step_count, 8)

    def test_strategies_coincide_on_first_task(self):
        results = []
        for kind in ('plain', 'ewc', 'gem'):
            strategy = create_strategy(StrategyConfig(kind=kind, memory_size=10, fisher_samples=10))
            state, _ = train_task(self.initial_state(), self.tasks[4], strategy,
                                  np.random.default_rng(5), self.settings,
                                  select_rng=np.random.default_rng(6))
            results.append(state.params.flatten())
        assert_array_equal(results[0], results[1])
        assert_array_equal(results[0], results[2])

    def test_strategy_artifacts_after_task(self):
        ewc = create_strategy(StrategyConfig(kind='ewc', fisher_samples=10))
        gem = create_strategy(StrategyConfig(kind='gem', memory_size=10))
        train_task(self.initial_state(), self.tasks[4], ewc, np.random.default_rng(0), self.settings)
        train_task(self.initial_state(), self.tasks[4], gem, np.random.default_rng(0), self.settings)
        self.assertEqual(len(ewc.anchors), 1)
        self.assertEqual(len(gem.memories), 1)
        self.assertEqual(gem.memories[0].task_id, 4)


class TestRunSequence(unittest.TestCase):
    """Test cases for run_seed, run_sequence and select_best."""

    @classmethod
    def setUpClass(cls):
        cls.tasks = small_tasks()
        cls.settings = TrainingSettings(batch_size=10, epochs_per_task=1)

    def test_matrix_is_lower_triangular(self):
        result = run_seed([4, 5, 6], StrategyConfig(kind='gem', memory_size=10), 1, self.tasks,
                          self.settings)
        for i in range(3):
            self.assertTrue(result.matrix.is_row_complete(i))
        with self.assertRaises(IndexError):
            result.matrix.get(0, 1)
        self.assertEqual(result.history[-1].iteration, 12)
        self.assertEqual(result.diagnostics['tasks_seen'], 3)

    def test_deterministic(self):
        config = StrategyConfig(kind='ewc', fisher_samples=10)
        first = run_sequence([5, 4], config, [1, 2], self.tasks, self.settings)
        second = run_sequence([5, 4], config, [1, 2], self.tasks, self.settings)
        for a, b in zip(first.runs, second.runs):
            self.assertEqual(a.matrix.to_list(), b.matrix.to_list())
            assert_array_equal(a.params.flatten(), b.params.flatten())
        self.assertEqual(first.sequence, '54')
        self.assertIn(first.best, first.runs)

    def test_first_task_row_equal_across_strategies(self):
        rows = [run_seed([6, 4], StrategyConfig(kind=kind, memory_size=10, fisher_samples=10), 3,
                         self.tasks, self.settings).matrix.row(0)
                for kind in ('plain', 'ewc', 'gem')]
        self.assertEqual(rows[0], rows[1])
        self.assertEqual(rows[0], rows[2])

    def test_zero_epochs_evaluates_initialization(self):
        settings = TrainingSettings(epochs_per_task=0)
        result = run_seed([4, 5], StrategyConfig(kind='plain'), 4, self.tasks, settings)
        self.assertEqual(result.history, [])
        initial = ClassifierParams.random(3, 1, make_rng(4, STREAM_INIT))
        assert_array_equal(result.params.flatten(), initial.flatten())

    def test_missing_task(self):
        with self.assertRaises(MissingDatasetError):
            run_sequence([4, 1], StrategyConfig(kind='plain'), [1], self.tasks, self.settings)

    def test_select_best_prefers_first_on_ties(self):
        def fake(seed, last_row):
            matrix = AccuracyMatrix(2)
            matrix.set(0, 0, 0.5)
            for j, value in enumerate(last_row):
                matrix.set(1, j, value)
            return RunResult(seed, matrix, ClassifierParams.zeros(2, 1))

        runs = [fake(1, [0.5, 0.7]), fake(2, [0.7, 0.5]), fake(3, [0.6, 0.5])]
        self.assertEqual(select_best(runs).seed, 1)
        runs.append(fake(4, [0.9, 0.9]))
        self.assertEqual(select_best(runs).seed, 4)
        with self.assertRaises(ValueError):
            select_best([])


if __name__ == '__main__':
    unittest.main()
