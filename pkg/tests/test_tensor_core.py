"""
Unit tests for the tensor helpers and the seeded random stream.
"""
import unittest

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import (
    DTYPE,
    ElementwiseOp,
    as_tensor,
    elementwise,
    glorot_uniform,
    matmul,
    reshape,
    zeros,
)


@pytest.mark.unit
class TestTensorConstructors(unittest.TestCase):

    def test_zeros_shapes(self):
        """zeros yields float32 tensors of the requested shape, all 0.0."""
        t = zeros([2, 3])
        self.assertEqual(t.shape, (2, 3))
        self.assertEqual(t.dtype, DTYPE)
        self.assertTrue((t == 0.0).all())
        self.assertEqual(zeros([1]).tolist(), [0.0])
        self.assertEqual(zeros([32, 56, 56]).size, 100352)

    def test_zeros_rejects_bad_shapes(self):
        with self.assertRaises(ValueError):
            zeros([])
        with self.assertRaises(ValueError):
            zeros([2, 0])

    def test_as_tensor_copies(self):
        source = np.ones((2, 2))
        t = as_tensor(source)
        t[0, 0] = 5.0
        self.assertEqual(source[0, 0], 1.0)
        self.assertEqual(t.dtype, np.float32)


@pytest.mark.unit
class TestGlorotUniform(unittest.TestCase):

    def test_bound_for_unit_limit(self):
        """fan_in = fan_out = 3 gives L = 1."""
        values = glorot_uniform(Rng(42), 3, 3, (50, 50))
        self.assertLessEqual(float(np.abs(values).max()), 1.0)
        self.assertEqual(values.dtype, np.float32)

    def test_fixed_seed_is_reproducible(self):
        first = glorot_uniform(Rng(42), 4, 4, (2, 2))
        second = glorot_uniform(Rng(42), 4, 4, (2, 2))
        self.assertEqual(first.tobytes(), second.tobytes())

    def test_rejects_zero_fan(self):
        with self.assertRaises(ValueError):
            glorot_uniform(Rng(0), 0, 3, (3,))

    def test_sample_mean_is_centred(self):
        values = glorot_uniform(Rng(11), 3, 3, (100_000,))
        self.assertLess(abs(float(values.mean(dtype=np.float64))), 0.01)

    def test_different_seeds_differ(self):
        first = glorot_uniform(Rng(1), 4, 4, (8, 8))
        second = glorot_uniform(Rng(2), 4, 4, (8, 8))
        self.assertFalse(np.array_equal(first, second))


@pytest.mark.unit
class TestArithmetic(unittest.TestCase):

    def test_matmul_identity_and_hand_case(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=np.float32)
        np.testing.assert_array_equal(matmul(np.eye(2, dtype=np.float32), a), a)
        np.testing.assert_array_equal(matmul(np.array([[1.0, 2.0]]), np.array([[3.0], [4.0]])), [[11.0]])

    def test_matmul_rejects_inner_mismatch(self):
        with self.assertRaises(ValueError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))
        with self.assertRaises(ValueError):
            matmul(np.ones(3), np.ones((3, 1)))

    def test_matmul_matches_triple_loop(self):
        rng = Rng(5)
        a, b = rng.random((5, 7)), rng.random((7, 3))
        expected = np.zeros((5, 3))
        for i in range(5):
            for j in range(3):
                for k in range(7):
                    expected[i, j] += float(a[i, k]) * float(b[k, j])
        self.assertLess(float(np.abs(matmul(a, b) - expected).max()), 1e-5)

    def test_matmul_is_associative_within_tolerance(self):
        rng = np.random.default_rng(12)
        a, b, c = (rng.uniform(-1.0, 1.0, shape).astype(np.float32) for shape in ((4, 6), (6, 5), (5, 3)))
        difference = np.abs(matmul(matmul(a, b), c) - matmul(a, matmul(b, c))).max()
        self.assertLess(float(difference), 1e-4)

    def test_elementwise_ops(self):
        x = np.array([1.0, 2.0], dtype=np.float32)
        np.testing.assert_array_equal(elementwise(x, np.array([3.0, 4.0], dtype=np.float32), ElementwiseOp.ADD), [4.0, 6.0])
        np.testing.assert_array_equal(elementwise(x, np.zeros(2, dtype=np.float32), "mul"), [0.0, 0.0])
        np.testing.assert_array_equal(elementwise(x, x, ElementwiseOp.SUB), [0.0, 0.0])
        with self.assertRaises(ValueError):
            elementwise(x, np.ones(3), ElementwiseOp.ADD)

    def test_elementwise_keeps_float64(self):
        x = np.ones(3)
        self.assertEqual(elementwise(x, x, ElementwiseOp.ADD).dtype, np.float64)

    def test_reshape_flatten_case(self):
        self.assertEqual(reshape(np.zeros((64, 12, 12)), (9216,)).shape, (9216,))
        flat = reshape(np.arange(6.0).reshape(2, 3), (3, 2))
        self.assertEqual(flat.ravel().tolist(), [0.0, 1.0, 2.0, 3.0, 4.0, 5.0])
        with self.assertRaises(ValueError):
            reshape(np.zeros((2, 3)), (4,))


@pytest.mark.unit
class TestReshapeProperties(unittest.TestCase):

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(1, 5), min_size=1, max_size=4))
    def test_reshape_round_trip_preserves_order(self, dims):
        t = np.arange(int(np.prod(dims)), dtype=np.float32).reshape(dims)
        flat = reshape(t, (t.size,))
        np.testing.assert_array_equal(reshape(flat, dims), t)
        np.testing.assert_array_equal(flat, np.arange(t.size))


@pytest.mark.unit
class TestRng(unittest.TestCase):

    def test_same_seed_same_stream(self):
        self.assertEqual(Rng(7).random((5,)).tobytes(), Rng(7).random((5,)).tobytes())

    def test_child_streams_are_independent_and_stable(self):
        rng = Rng(7)
        a = rng.child(1).random((4,))
        b = rng.child(2).random((4,))
        self.assertFalse(np.array_equal(a, b))
        np.testing.assert_array_equal(a, Rng(7).child(1).random((4,)))

    def test_child_does_not_advance_parent(self):
        rng = Rng(3)
        rng.child(9)
        np.testing.assert_array_equal(rng.random((3,)), Rng(3).random((3,)))

    def test_rejects_out_of_range_seed(self):
        with self.assertRaises(ValueError):
            Rng(-1)
        with self.assertRaises(ValueError):
            Rng(2 ** 64)


if __name__ == '__main__':
    unittest.main()
