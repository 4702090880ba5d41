"""
Unit tests for the plain, EWC and GEM strategies.
"""
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.experiment_config import StrategyConfig
from core.seeding import make_rng
from objects.classifier_params import ClassifierParams
from objects.episodic_memory import EpisodicMemory, FisherAnchor
from strategies import (EWCStrategy, GEMStrategy, PlainStrategy, create_strategy)
from strategies.ewc_strategy import (estimate_fisher_diag, ewc_loss, ewc_penalty,
                                     ewc_regularized_grad)
from strategies.gem_strategy import memory_grad, memory_loss
from systems.adam_optimizer import AdamState, adam_update
from systems.dataset_generator import gen_task_ising
from systems.gradient_system import central_difference, loss_and_grad, per_sample_loss_and_grads
from systems.quantum_classifier import as_arrays, loss


class StrategyTestCase(unittest.TestCase):
    """Shared small task and parameters."""

    @classmethod
    def setUpClass(cls):
        cls.task = gen_task_ising(4, seed=21, n_qubits=3, n_samples=64, n_train=40)

    def setUp(self):
        self.params = ClassifierParams.random(3, 1, np.random.default_rng(8))


class TestFactory(unittest.TestCase):
    """Test cases for create_strategy."""

    def test_kinds(self):
        self.assertIsInstance(create_strategy(StrategyConfig(kind='plain')), PlainStrategy)
        self.assertIsInstance(create_strategy(StrategyConfig(kind='ewc')), EWCStrategy)
        self.assertIsInstance(create_strategy(StrategyConfig(kind='gem')), GEMStrategy)
        self.assertEqual(create_strategy(StrategyConfig(kind='gem')).get_name(), 'gem')


class TestPlainStrategy(StrategyTestCase):
    """Test cases for PlainStrategy."""

    def test_passes_gradient_through(self):
        strategy = PlainStrategy()
        grad = np.arange(self.params.p, dtype=float)
        self.assertIs(strategy.update_direction(self.params, grad), grad)
        strategy.on_task_end(self.params, self.task, np.random.default_rng(0))
        self.assertEqual(strategy.diagnostics()['tasks_seen'], 1)


class TestFisher(StrategyTestCase):
    """Test cases for estimate_fisher_diag."""

    def test_single_sample_is_squared_gradient(self):
        sample = self.task.train[0]
        states, labels = as_arrays([sample])
        _, grads = per_sample_loss_and_grads(self.params, states, labels)
        assert_allclose(estimate_fisher_diag(self.params, [sample]), grads[0] ** 2)

    def test_zero_head_blocks_circuit_entries(self):
        self.params.w1 = np.zeros_like(self.params.w1)
        self.params.w2 = np.zeros_like(self.params.w2)
        fisher = estimate_fisher_diag(self.params, self.task.train[:10])
        assert_allclose(fisher[:self.params.n_angles], 0.0, atol=1e-30)

    def test_matches_finite_difference_oracle(self):
        samples = self.task.train[:4]
        oracle = np.zeros(self.params.p)
        for sample in samples:
            oracle += central_difference(
                lambda v: loss(ClassifierParams.unflatten(v, 3, 1), [sample]),
                self.params.flatten(), 1e-5) ** 2
        assert_allclose(estimate_fisher_diag(self.params, samples), oracle / 4, atol=1e-6)

    def test_empty_samples(self):
        with self.assertRaises(ValueError):
            estimate_fisher_diag(self.params, [])


class TestEWC(StrategyTestCase):
    """Test cases for the consolidation penalty and its gradient."""

    def test_no_anchor_or_zero_lambda(self):
        grad = np.ones(self.params.p)
        anchor = FisherAnchor(1, np.zeros(self.params.p), np.ones(self.params.p))
        self.assertIs(ewc_regularized_grad(self.params, grad, [], 5.0), grad)
        self.assertIs(ewc_regularized_grad(self.params, grad, [anchor], 0.0), grad)

    def test_single_parameter_arithmetic(self):
        anchor = FisherAnchor(1, np.array([0.0]), np.array([3.0]))
        result = ewc_regularized_grad(np.array([0.5]), np.zeros(1), [anchor], 2.0)
        assert_allclose(result, [6.0])

    def test_gradient_matches_finite_difference_on_toy(self):
        rng = np.random.default_rng(3)
        theta = rng.normal(size=5)
        anchors = [FisherAnchor(k, rng.normal(size=5), rng.uniform(0, 2, size=5)) for k in (1, 2)]

        def total(v):
            return float(v @ v) + ewc_penalty(v, anchors, 0.7)

        expected = central_difference(total, theta, 1e-6)
        assert_allclose(ewc_regularized_grad(theta, 2 * theta, anchors, 0.7), expected, atol=1e-7)

    def test_ewc_loss_adds_penalty(self):
        anchor = FisherAnchor(1, self.params.flatten() + 0.1, np.ones(self.params.p))
        batch = self.task.train[:5]
        expected = loss(self.params, batch) + 2.0 * self.params.p * 0.01
        self.assertAlmostEqual(ewc_loss(self.params, batch, [anchor], 2.0), expected, places=10)

    def test_strong_anchor_reduces_drift(self):
        anchor = FisherAnchor(1, np.zeros(4), np.ones(4))
        target = np.array([1.0, -2.0, 0.5, 3.0])

        def drift(ewc_lambda):
            state, theta = AdamState.create(4, lr=0.1), np.zeros(4)
            for _ in range(300):
                direction = ewc_regularized_grad(theta, 2 * (theta - target), [anchor], ewc_lambda)
                state, theta = adam_update(state, theta, direction)
            return float(np.linalg.norm(theta - anchor.theta_star))

        self.assertLess(drift(1e3), drift(0.0))

    def test_strategy_stores_anchor(self):
        strategy = EWCStrategy(StrategyConfig(kind='ewc', ewc_lambda=2.0, fisher_samples=10))
        strategy.on_task_end(self.params, self.task, make_rng(1))
        self.assertEqual(len(strategy.anchors), 1)
        assert_allclose(strategy.anchors[0].theta_star, self.params.flatten())
        moved = ClassifierParams.unflatten(self.params.flatten() + 0.2, 3, 1)
        grad = np.zeros(self.params.p)
        direction = strategy.update_direction(moved, grad)
        assert_allclose(direction, 2 * 2.0 * strategy.anchors[0].fisher_diag * 0.2, atol=1e-12)


class TestGEM(StrategyTestCase):
    """Test cases for memory losses and the GEM strategy."""

    def test_memory_loss_definitions(self):
        sample = self.task.train[0]
        single = EpisodicMemory(4, [sample])
        self.assertAlmostEqual(memory_loss(self.params, single), loss(self.params, [sample]))
        repeated = EpisodicMemory(4, [sample] * 50)
        self.assertAlmostEqual(memory_loss(self.params, repeated), loss(self.params, [sample]),
                               places=12)
        memory = EpisodicMemory(4, self.task.train[:7])
        self.assertAlmostEqual(memory_loss(self.params, memory), loss(self.params, memory.samples))

    def test_empty_memory(self):
        with self.assertRaises(ValueError):
            memory_loss(self.params, EpisodicMemory(4, []))

    def test_memory_capacity(self):
        with self.assertRaises(ValueError):
            EpisodicMemory(4, self.task.train[:3], capacity=2)

    def test_projected_direction_respects_memory(self):
        config = StrategyConfig(kind='gem', memory_size=10, debug_checks=True)
        strategy = GEMStrategy(config)
        strategy.on_task_end(self.params, self.task, make_rng(2))
        self.assertEqual(len(strategy.memories[0]), 10)
        reference = memory_grad(self.params, strategy.memories[0])
        for grad in (-reference, -2.0 * reference, reference):
            direction = strategy.update_direction(self.params, grad)
            self.assertGreaterEqual(float(direction @ reference), -1e-8)
        info = strategy.diagnostics()
        self.assertEqual(info['iterations'], 3)
        self.assertEqual(info['projected_iterations'], 2)
        self.assertGreaterEqual(info['min_constraint_margin'], -1e-8)

    def test_without_memories_gradient_is_unchanged(self):
        strategy = GEMStrategy(StrategyConfig(kind='gem'))
        _, grad = loss_and_grad(self.params, self.task.train[:10])
        self.assertIs(strategy.update_direction(self.params, grad), grad)


if __name__ == '__main__':
    unittest.main()
