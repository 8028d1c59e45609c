from dataclasses import dataclass, field
from math import prod

from spamnet.layers.base import Layer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor, reshape


@dataclass(eq=False)
class FlattenLayer(Layer):
    name: str
    _input_shape: tuple[int, ...] | None = field(default=None, init=False, repr=False)

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        return (prod(input_shape),)

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        self._input_shape = x.shape
        return reshape(x, (x.shape[0], *self.output_shape(x.shape[1:])))

    def backward(self, grad_out: Tensor) -> Tensor:
        return reshape(grad_out, self._require_cache(self._input_shape))
