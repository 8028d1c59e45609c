"""
Unit tests for the checkpoint codec.

All file I/O happens inside a temporary directory.
"""
import struct
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pytest

from spamnet.loss_optim.optimizers import AdamState, adam_step
from spamnet.model.checkpoint import (
    BadMagicError,
    ModelCheckpoint,
    ShapeTableError,
    TruncatedCheckpointError,
    VersionMismatchError,
    load_checkpoint,
    read_checkpoint,
    save_checkpoint,
)
from spamnet.model.spamnet import INPUT_SHAPE, build_spamnet
from spamnet.model.training import predict
from spamnet.tensor_core.rng import Rng


@pytest.mark.unit
class TestCheckpointRoundTrip(unittest.TestCase):

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)
        self.net = build_spamnet(Rng(42), dropout_rate=0.3)
        self.adam = AdamState.for_parameters(self.net.parameters())
        grads = {name: np.full_like(value, 0.01) for name, value in self.net.parameters().items()}
        adam_step(self.adam, self.net.parameters(), grads)
        self.path = self.tmp / "spamnet.ckpt"
        save_checkpoint(self.net, self.adam, self.path, epoch=12, seed=2 ** 63 + 5)

    def tearDown(self):
        self._tmp.cleanup()

    def test_save_load_save_is_byte_identical(self):
        net, adam = load_checkpoint(self.path)
        second = self.tmp / "again.ckpt"
        save_checkpoint(net, adam, second, epoch=12, seed=2 ** 63 + 5)
        self.assertEqual(self.path.read_bytes(), second.read_bytes())

    def test_decode_encode_is_byte_identical(self):
        data = self.path.read_bytes()
        self.assertEqual(ModelCheckpoint.from_bytes(data).to_bytes(), data)

    def test_resave_from_read_metadata_is_byte_identical(self):
        checkpoint = read_checkpoint(self.path)
        net, adam = checkpoint.restore()
        second = self.tmp / "resaved.ckpt"
        save_checkpoint(net, adam, second, epoch=checkpoint.epoch, seed=checkpoint.seed)
        self.assertEqual(self.path.read_bytes(), second.read_bytes())

    def test_parameters_survive_exactly(self):
        net, _ = load_checkpoint(self.path)
        restored = net.parameters()
        for name, value in self.net.parameters().items():
            self.assertEqual(value.tobytes(), restored[name].tobytes(), name)

    def test_metadata_and_optimizer_state(self):
        checkpoint = read_checkpoint(self.path)
        self.assertEqual(checkpoint.epoch, 12)
        self.assertEqual(checkpoint.seed, 2 ** 63 + 5)
        self.assertEqual(checkpoint.dropout_rate, 0.3)
        net, adam = checkpoint.restore()
        self.assertEqual(net.dropout_rate, 0.3)
        self.assertEqual(adam.t, 1)
        self.assertEqual((adam.lr, adam.beta1, adam.beta2, adam.eps), (1e-3, 0.9, 0.999, 1e-8))
        np.testing.assert_array_equal(adam.m["dense_2.weights"], self.adam.m["dense_2.weights"])

    def test_predictions_are_bit_identical_after_load(self):
        images = Rng(1).random((3, *INPUT_SHAPE))
        before, _ = predict(self.net, images)
        net, _ = load_checkpoint(self.path)
        after, _ = predict(net, images)
        self.assertEqual(before.tobytes(), after.tobytes())

    def test_loaded_network_is_in_eval_mode(self):
        net, _ = load_checkpoint(self.path)
        self.assertEqual(net.mode, "eval")

    def test_checkpoint_without_optimizer(self):
        path = self.tmp / "bare.ckpt"
        save_checkpoint(self.net, None, path)
        _, adam = load_checkpoint(path)
        self.assertIsNone(adam)


@pytest.mark.unit
class TestCheckpointErrors(unittest.TestCase):

    def setUp(self):
        self.data = ModelCheckpoint.from_model(build_spamnet(Rng(0)), None).to_bytes()

    def test_bad_magic(self):
        with self.assertRaises(BadMagicError):
            ModelCheckpoint.from_bytes(b"NOPE" + self.data[4:])

    def test_newer_version(self):
        with self.assertRaises(VersionMismatchError):
            ModelCheckpoint.from_bytes(self.data[:4] + struct.pack("<I", 2) + self.data[8:])

    def test_truncated(self):
        with self.assertRaises(TruncatedCheckpointError):
            ModelCheckpoint.from_bytes(self.data[:-10])
        with self.assertRaises(TruncatedCheckpointError):
            ModelCheckpoint.from_bytes(self.data[:6])

    def test_trailing_bytes(self):
        with self.assertRaises(ShapeTableError):
            ModelCheckpoint.from_bytes(self.data + b"\x00")

    def test_missing_parameter(self):
        checkpoint = ModelCheckpoint.from_bytes(self.data)
        del checkpoint.tensors["dense_2.bias"]
        with self.assertRaises(ShapeTableError):
            checkpoint.restore()

    def test_wrong_parameter_shape(self):
        checkpoint = ModelCheckpoint.from_bytes(self.data)
        checkpoint.tensors["dense_2.bias"] = np.zeros(2, dtype=np.float32)
        with self.assertRaises(ShapeTableError):
            checkpoint.restore()


if __name__ == '__main__':
    unittest.main()
