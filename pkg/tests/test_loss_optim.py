"""
Unit tests for binary cross-entropy and the Adam / SGD update rules.
"""
import math
import unittest

import numpy as np
import pytest

from spamnet.loss_optim.loss import CLAMP, bce_loss
from spamnet.loss_optim.optimizers import AdamState, adam_step, sgd_step
from tests.gradcheck import numeric_gradient, relative_error


@pytest.mark.unit
class TestBinaryCrossEntropy(unittest.TestCase):

    def test_half_probability(self):
        loss, _ = bce_loss(np.array([[0.5]]), np.array([[1.0]]))
        self.assertAlmostEqual(loss, math.log(2), places=6)

    def test_exact_predictions_are_clamped(self):
        loss, grad = bce_loss(np.array([[1.0], [0.0]]), np.array([[1.0], [0.0]]))
        self.assertLess(loss, 1e-6)
        self.assertTrue(np.isfinite(grad).all())

    def test_confident_miss_is_finite(self):
        loss, grad = bce_loss(np.array([[0.0]]), np.array([[1.0]]))
        self.assertAlmostEqual(loss, -math.log(CLAMP), places=4)
        self.assertTrue(np.isfinite(grad).all())

    def test_gradient_matches_finite_differences(self):
        pred = np.random.default_rng(0).uniform(0.05, 0.95, (6, 1))
        target = np.array([[1.0], [0.0], [1.0], [1.0], [0.0], [0.0]])
        _, grad = bce_loss(pred, target)
        numeric = numeric_gradient(lambda: bce_loss(pred, target)[0], pred)
        self.assertLess(relative_error(grad.ravel(), numeric).max(), 1e-4)

    def test_gradient_keeps_prediction_dtype(self):
        _, grad = bce_loss(np.full((2, 1), 0.3, dtype=np.float32), np.array([[1.0], [0.0]], dtype=np.float32))
        self.assertEqual(grad.dtype, np.float32)

    def test_rejects_bad_inputs(self):
        with self.assertRaises(ValueError):
            bce_loss(np.array([[0.5]]), np.array([[0.5]]))
        with self.assertRaises(ValueError):
            bce_loss(np.array([0.5, 0.5]), np.array([1.0, 0.0]))
        with self.assertRaises(ValueError):
            bce_loss(np.zeros((2, 1)), np.zeros((3, 1)))


@pytest.mark.unit
class TestAdam(unittest.TestCase):

    def setUp(self):
        self.params = {"p": np.array([1.0])}
        self.state = AdamState.for_parameters(self.params)

    def test_zero_gradient_leaves_parameters(self):
        adam_step(self.state, self.params, {"p": np.array([0.0])})
        self.assertEqual(self.params["p"][0], 1.0)
        self.assertEqual(self.state.t, 1)

    def test_first_step_moves_by_learning_rate(self):
        adam_step(self.state, self.params, {"p": np.array([1.0])})
        self.assertAlmostEqual(float(self.params["p"][0]), 0.999, places=6)

    def test_first_step_magnitude_is_learning_rate(self):
        for gradient in (1e-3, -0.5, 2.0, -1e3):
            params = {"p": np.array([0.0])}
            adam_step(AdamState.for_parameters(params, lr=0.01), params, {"p": np.array([gradient])})
            self.assertLess(abs(abs(float(params["p"][0])) - 0.01), 1e-6, gradient)
            self.assertEqual(np.sign(params["p"][0]), -np.sign(gradient))

    def test_minimises_square(self):
        state = AdamState.for_parameters(self.params, lr=0.1)
        for _ in range(100):
            adam_step(state, self.params, {"p": 2 * self.params["p"]})
        self.assertLess(abs(float(self.params["p"][0])), 0.1)

    def test_updates_in_place(self):
        original = self.params["p"]
        adam_step(self.state, self.params, {"p": np.array([0.5])})
        self.assertIs(self.params["p"], original)

    def test_rejects_mismatched_names_and_shapes(self):
        with self.assertRaises(ValueError):
            adam_step(self.state, self.params, {"q": np.array([1.0])})
        with self.assertRaises(ValueError):
            adam_step(self.state, self.params, {"p": np.array([1.0, 2.0])})


@pytest.mark.unit
class TestSgd(unittest.TestCase):

    def test_zero_learning_rate(self):
        params = {"p": np.array([1.0])}
        sgd_step(params, {"p": np.array([3.0])}, lr=0.0)
        self.assertEqual(params["p"][0], 1.0)

    def test_hand_case(self):
        params = {"p": np.array([1.0])}
        sgd_step(params, {"p": np.array([2.0])}, lr=0.5)
        self.assertEqual(params["p"][0], 0.0)


if __name__ == '__main__':
    unittest.main()
