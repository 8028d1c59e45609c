from dataclasses import dataclass, field
from spamnet._utils.compat import StrEnum

import numpy as np

from spamnet.layers.base import Layer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor


class ActivationKind(StrEnum):
    RELU = "relu"
    SIGMOID = "sigmoid"


def activation_forward(kind: ActivationKind, x: Tensor) -> Tensor:
    """Sigmoid is evaluated in float64 and kept strictly inside (0, 1) at the input's precision."""
    if kind is ActivationKind.RELU:
        return np.maximum(x, 0)
    wide = np.asarray(x, dtype=np.float64)
    z = np.exp(-np.abs(wide))
    out = np.where(wide >= 0, 1 / (1 + z), z / (1 + z))
    eps = np.finfo(x.dtype).eps
    return np.clip(out, eps, 1 - eps).astype(x.dtype)


def activation_backward(kind: ActivationKind, cache: Tensor, grad_out: Tensor) -> Tensor:
    """``cache`` is the forward output; ReLU's derivative at exactly 0 is 0."""
    if cache.shape != grad_out.shape:
        raise ValueError(f"grad_out shape {grad_out.shape} does not match cached output {cache.shape}")
    if kind is ActivationKind.RELU:
        return grad_out * (cache > 0)
    return grad_out * cache * (1 - cache)


@dataclass(eq=False)
class ActivationLayer(Layer):
    name: str
    activation: ActivationKind = ActivationKind.RELU
    _output: Tensor | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.activation = ActivationKind(self.activation)

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(input_shape)

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        self._output = activation_forward(self.activation, x)
        return self._output

    def backward(self, grad_out: Tensor) -> Tensor:
        return activation_backward(self.activation, self._require_cache(self._output), grad_out)
