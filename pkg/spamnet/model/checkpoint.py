"""
Checkpoint codec.

Byte layout (all integers little-endian)::

    magic       4 bytes   b"DISC"
    version     u32
    count       u32       number of tensors that follow
    per tensor:
      name_len  u16
      name      name_len bytes of UTF-8
      rank      u8        >= 1
      dims      rank x u32, each >= 1
      payload   prod(dims) x f32 (IEEE-754 binary32, little-endian, row-major)

Network parameters are stored under ``<layer>.<param>``. Optimizer moments use
``adam.m.<param>`` / ``adam.v.<param>``. Integer and float64 metadata (``meta.*``,
``adam.t`` and the Adam hyperparameters) are stored as four-element tensors, one
16-bit word of the 64-bit value per element, low word first; float32 holds every
16-bit integer exactly, so these values round-trip without loss.
"""
import struct
from dataclasses import dataclass, field
from math import prod
from pathlib import Path

import numpy as np

from spamnet.loss_optim.optimizers import AdamState
from spamnet.model.spamnet import SpamNet, build_spamnet
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor

MAGIC = b"DISC"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sII")
_NAME_LEN = struct.Struct("<H")
_RANK = struct.Struct("<B")

_WORDS = 4
_ADAM_FLOATS = ("lr", "beta1", "beta2", "eps")


class CheckpointError(Exception):
    pass


class BadMagicError(CheckpointError):
    pass


class VersionMismatchError(CheckpointError):
    pass


class TruncatedCheckpointError(CheckpointError):
    pass


class ShapeTableError(CheckpointError):
    pass


def _pack_u64(value: int) -> Tensor:
    if not 0 <= value < 2 ** 64:
        raise ValueError(f"Value does not fit in 64 unsigned bits: {value}")
    return np.array([(value >> (16 * i)) & 0xFFFF for i in range(_WORDS)], dtype=np.float32)


def _unpack_u64(name: str, words: Tensor) -> int:
    if words.shape != (_WORDS,):
        raise ShapeTableError(f"{name}: expected shape ({_WORDS},), got {words.shape}")
    if not all(w.is_integer() and 0 <= w <= 0xFFFF for w in words.tolist()):
        raise ShapeTableError(f"{name}: words are not 16-bit integers")
    return sum(int(w) << (16 * i) for i, w in enumerate(words.tolist()))


def _pack_f64(value: float) -> Tensor:
    return _pack_u64(int(np.float64(value).view(np.uint64)))


def _unpack_f64(name: str, words: Tensor) -> float:
    return float(np.uint64(_unpack_u64(name, words)).view(np.float64))


class _Reader:
    def __init__(self, data: bytes):
        self._data = data
        self._offset = 0

    @property
    def remaining(self) -> int:
        return len(self._data) - self._offset

    def take(self, size: int, what: str) -> bytes:
        if self.remaining < size:
            raise TruncatedCheckpointError(
                f"Checkpoint truncated while reading {what}: need {size} bytes at offset "
                f"{self._offset}, {self.remaining} left")
        chunk = self._data[self._offset:self._offset + size]
        self._offset += size
        return chunk

    def unpack(self, fmt: struct.Struct, what: str) -> tuple:
        return fmt.unpack(self.take(fmt.size, what))


@dataclass
class ModelCheckpoint:
    tensors: dict[str, Tensor] = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @property
    def epoch(self) -> int:
        return _unpack_u64("meta.epoch", self.tensors["meta.epoch"])

    @property
    def seed(self) -> int:
        return _unpack_u64("meta.seed", self.tensors["meta.seed"])

    @property
    def dropout_rate(self) -> float:
        return _unpack_f64("meta.dropout", self.tensors["meta.dropout"])

    def to_bytes(self) -> bytes:
        chunks = [_HEADER.pack(MAGIC, self.format_version, len(self.tensors))]
        for name, tensor in self.tensors.items():
            encoded = name.encode("utf-8")
            if tensor.ndim < 1 or tensor.ndim > 255 or 0 in tensor.shape:
                raise ShapeTableError(f"{name}: cannot store tensor of shape {tensor.shape}")
            chunks.append(_NAME_LEN.pack(len(encoded)))
            chunks.append(encoded)
            chunks.append(_RANK.pack(tensor.ndim))
            chunks.append(struct.pack(f"<{tensor.ndim}I", *tensor.shape))
            chunks.append(np.ascontiguousarray(tensor, dtype="<f4").tobytes())
        return b"".join(chunks)

    @classmethod
    def from_bytes(cls, data: bytes) -> "ModelCheckpoint":
        reader = _Reader(data)
        magic, version, count = reader.unpack(_HEADER, "header")
        if magic != MAGIC:
            raise BadMagicError(f"Bad magic {magic!r}, expected {MAGIC!r}")
        if version != FORMAT_VERSION:
            raise VersionMismatchError(f"Checkpoint format version {version} is not supported "
                                       f"(this build reads version {FORMAT_VERSION})")
        tensors: dict[str, Tensor] = {}
        for index in range(count):
            (name_len,) = reader.unpack(_NAME_LEN, f"name length of tensor {index}")
            try:
                name = reader.take(name_len, f"name of tensor {index}").decode("utf-8")
            except UnicodeDecodeError:
                raise ShapeTableError(f"Tensor {index} has a name that is not UTF-8") from None
            if name in tensors:
                raise ShapeTableError(f"Duplicate tensor name {name!r}")
            (rank,) = reader.unpack(_RANK, f"rank of {name}")
            if rank < 1:
                raise ShapeTableError(f"{name}: rank must be >= 1")
            dims = struct.unpack(f"<{rank}I", reader.take(4 * rank, f"dims of {name}"))
            if 0 in dims:
                raise ShapeTableError(f"{name}: zero dimension in {dims}")
            payload = reader.take(4 * prod(dims), f"payload of {name}")
            tensors[name] = np.frombuffer(payload, dtype="<f4").reshape(dims).astype(np.float32)
        if reader.remaining:
            raise ShapeTableError(f"{reader.remaining} bytes follow the last of {count} tensors")
        return cls(tensors=tensors, format_version=version)

    @classmethod
    def from_model(cls, net: SpamNet, adam: AdamState | None, epoch: int = 0, seed: int = 0) -> "ModelCheckpoint":
        tensors = dict(net.parameters())
        tensors["meta.epoch"] = _pack_u64(epoch)
        tensors["meta.seed"] = _pack_u64(seed)
        tensors["meta.dropout"] = _pack_f64(net.dropout_rate)
        if adam is not None:
            tensors["adam.t"] = _pack_u64(adam.t)
            for key in _ADAM_FLOATS:
                tensors[f"adam.{key}"] = _pack_f64(getattr(adam, key))
            for name in adam.m:
                tensors[f"adam.m.{name}"] = adam.m[name]
                tensors[f"adam.v.{name}"] = adam.v[name]
        return cls(tensors=tensors)

    def restore(self) -> tuple[SpamNet, AdamState | None]:
        for required in ("meta.epoch", "meta.seed", "meta.dropout"):
            if required not in self.tensors:
                raise ShapeTableError(f"Checkpoint is missing {required}")
        try:
            net = build_spamnet(Rng(0), dropout_rate=self.dropout_rate)
        except ValueError as exc:
            raise ShapeTableError(f"meta.dropout: {exc}") from None
        expected = net.parameters()
        params = {name: t for name, t in self.tensors.items() if not name.startswith(("meta.", "adam."))}
        if set(params) != set(expected):
            raise ShapeTableError(f"Parameter table does not match the network: missing "
                                  f"{sorted(set(expected) - set(params))}, unexpected {sorted(set(params) - set(expected))}")
        for name, value in params.items():
            if value.shape != expected[name].shape:
                raise ShapeTableError(f"{name}: stored shape {value.shape}, network expects {expected[name].shape}")
        net.load_parameters(params)
        net.eval()
        return net, self._restore_adam(expected)

    def _restore_adam(self, expected: dict[str, Tensor]) -> AdamState | None:
        if "adam.t" not in self.tensors:
            return None
        adam = AdamState(t=_unpack_u64("adam.t", self.tensors["adam.t"]))
        for key in _ADAM_FLOATS:
            if f"adam.{key}" not in self.tensors:
                raise ShapeTableError(f"Checkpoint is missing adam.{key}")
            setattr(adam, key, _unpack_f64(f"adam.{key}", self.tensors[f"adam.{key}"]))
        for name, param in expected.items():
            for moment, store in (("m", adam.m), ("v", adam.v)):
                key = f"adam.{moment}.{name}"
                if key in self.tensors:
                    if self.tensors[key].shape != param.shape:
                        raise ShapeTableError(f"{key}: stored shape {self.tensors[key].shape}, "
                                              f"parameter has {param.shape}")
                    store[name] = self.tensors[key].copy()
        if set(adam.m) != set(adam.v):
            raise ShapeTableError("Optimizer first and second moments cover different parameters")
        return adam


def save_checkpoint(net: SpamNet, adam: AdamState | None, path: Path, epoch: int = 0, seed: int = 0) -> None:
    path = Path(path)
    data = ModelCheckpoint.from_model(net, adam, epoch=epoch, seed=seed).to_bytes()
    tmp_path = path.with_name(path.name + ".tmp")
    tmp_path.write_bytes(data)
    tmp_path.replace(path)


def read_checkpoint(path: Path) -> ModelCheckpoint:
    return ModelCheckpoint.from_bytes(Path(path).read_bytes())


def load_checkpoint(path: Path) -> tuple[SpamNet, AdamState | None]:
    """The returned network is in eval mode; epoch and seed are on ``read_checkpoint(path)``."""
    return read_checkpoint(path).restore()
