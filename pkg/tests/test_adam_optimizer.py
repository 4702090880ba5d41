"""
Unit tests for the Adam update.
"""
import os
import sys
import unittest

import numpy as np
from numpy.testing import assert_allclose

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from systems.adam_optimizer import AdamState, adam_update


class TestAdam(unittest.TestCase):
    """Test cases for adam_update."""

    def test_first_step(self):
        state = AdamState.create(3, lr=0.1)
        params = np.array([0.5, -0.5, 2.0])
        new_state, new_params = adam_update(state, params, np.ones(3))
        assert_allclose(new_params - params, -0.1 / (1 + 1e-8), rtol=1e-12)
        self.assertEqual(new_state.step_count, 1)
        self.assertEqual(state.step_count, 0)

    def test_zero_gradient_is_stationary(self):
        state = AdamState.create(2)
        params = np.array([1.0, -3.0])
        for _ in range(10):
            state, params = adam_update(state, params, np.zeros(2))
        assert_allclose(params, [1.0, -3.0])

    def test_converges_on_bowl(self):
        state = AdamState.create(1, lr=0.1)
        theta = np.array([1.0])
        for _ in range(200):
            state, theta = adam_update(state, theta, 2 * theta)
        self.assertLess(abs(theta[0]), 0.01)

    def test_shape_mismatch(self):
        with self.assertRaises(ValueError):
            adam_update(AdamState.create(2), np.zeros(3), np.zeros(3))


if __name__ == '__main__':
    unittest.main()
