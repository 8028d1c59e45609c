from dataclasses import dataclass, field

import numpy as np

from spamnet.layers.base import Layer, Mode
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor


@dataclass(eq=False)
class DropoutLayer(Layer):
    """Inverted dropout: kept activations are scaled by 1/(1 - rate) while training."""
    name: str
    rate: float
    mode: Mode = Mode.TRAIN
    _mask: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if not 0.0 <= self.rate < 1.0:
            raise ValueError(f"{self.name}: dropout rate must be in [0, 1), got {self.rate}")
        self.mode = Mode(self.mode)

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(input_shape)

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        if self.mode is Mode.EVAL or self.rate == 0.0:
            self._mask = None
            return x
        if rng is None:
            raise ValueError(f"{self.name}: training-mode dropout needs an rng")
        keep = rng.random(x.shape) >= self.rate
        self._mask = keep.astype(x.dtype) / x.dtype.type(1.0 - self.rate)
        return x * self._mask

    def backward(self, grad_out: Tensor) -> Tensor:
        if self._mask is None:
            return grad_out
        if grad_out.shape != self._mask.shape:
            raise ValueError(f"{self.name}: grad_out shape {grad_out.shape} does not match mask {self._mask.shape}")
        return grad_out * self._mask
