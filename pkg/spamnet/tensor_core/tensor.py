"""
Dense tensor helpers.

A tensor is a row-major ``numpy.ndarray`` with a non-empty shape whose dimensions are
all >= 1. Constructors produce float32; the arithmetic helpers keep the floating dtype
of their inputs, so the same code runs in float64 for gradient checks.
"""
from spamnet._utils.compat import StrEnum
from math import prod, sqrt
from typing import Sequence

import numpy as np
import numpy.typing as npt

from spamnet.tensor_core.rng import Rng

Tensor = npt.NDArray[np.floating]

DTYPE = np.float32


class ElementwiseOp(StrEnum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


_ELEMENTWISE = {
    ElementwiseOp.ADD: np.add,
    ElementwiseOp.SUB: np.subtract,
    ElementwiseOp.MUL: np.multiply,
}


def check_shape(shape: Sequence[int]) -> tuple[int, ...]:
    shape = tuple(int(d) for d in shape)
    if not shape:
        raise ValueError("Tensor shape cannot be empty")
    if any(d < 1 for d in shape):
        raise ValueError(f"Tensor dimensions must be >= 1, got {shape}")
    return shape


def as_tensor(data, dtype=DTYPE) -> Tensor:
    """Copy ``data`` into a C-ordered tensor, validating its shape."""
    array = np.array(data, dtype=dtype, order="C")
    check_shape(array.shape)
    return array


def zeros(shape: Sequence[int], dtype=DTYPE) -> Tensor:
    return np.zeros(check_shape(shape), dtype=dtype)


def glorot_uniform(rng: Rng, fan_in: int, fan_out: int, shape: Sequence[int]) -> Tensor:
    """Entries drawn i.i.d. from U[-L, L] with L = sqrt(6 / (fan_in + fan_out))."""
    if fan_in < 1 or fan_out < 1:
        raise ValueError(f"Fans must be >= 1, got fan_in={fan_in}, fan_out={fan_out}")
    limit = sqrt(6.0 / (fan_in + fan_out))
    values = rng.uniform(-limit, limit, check_shape(shape))
    return np.clip(values, -limit, limit).astype(DTYPE)


def matmul(a: Tensor, b: Tensor) -> Tensor:
    if a.ndim != 2 or b.ndim != 2:
        raise ValueError(f"matmul expects rank-2 tensors, got {a.shape} and {b.shape}")
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"Inner dimensions differ: {a.shape} x {b.shape}")
    return np.matmul(a, b)


def elementwise(a: Tensor, b: Tensor, op: ElementwiseOp) -> Tensor:
    if a.shape != b.shape:
        raise ValueError(f"Shapes differ: {a.shape} vs {b.shape}")
    return _ELEMENTWISE[ElementwiseOp(op)](a, b)


def reshape(t: Tensor, new_shape: Sequence[int]) -> Tensor:
    new_shape = check_shape(new_shape)
    if prod(new_shape) != t.size:
        raise ValueError(f"Cannot reshape {t.shape} ({t.size} elements) to {new_shape}")
    return np.reshape(t, new_shape, order="C")
