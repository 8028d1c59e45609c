from dataclasses import dataclass, field

import numpy as np

from spamnet.layers.base import ParametricLayer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor, glorot_uniform, matmul, zeros


@dataclass(eq=False)
class DenseLayer(ParametricLayer):
    """Fully connected layer, ``y = x W + b`` with W stored as [in, out]."""
    name: str
    weights: Tensor
    bias: Tensor
    weights_grad: Tensor = field(init=False, repr=False)
    bias_grad: Tensor = field(init=False, repr=False)
    _input: Tensor | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.weights.ndim != 2 or self.bias.shape != (self.weights.shape[1],):
            raise ValueError(f"{self.name}: weights [in, out] and bias [out] disagree: "
                             f"{self.weights.shape} vs {self.bias.shape}")
        self.weights_grad = np.zeros_like(self.weights)
        self.bias_grad = np.zeros_like(self.bias)

    @classmethod
    def create(cls, name: str, rng: Rng, in_features: int, out_features: int) -> "DenseLayer":
        return cls(
            name=name,
            weights=glorot_uniform(rng, in_features, out_features, (in_features, out_features)),
            bias=zeros((out_features,)),
        )

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        if tuple(input_shape) != (self.weights.shape[0],):
            raise ValueError(f"{self.name}: expected input width {self.weights.shape[0]}, got {input_shape}")
        return (self.weights.shape[1],)

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        if x.ndim != 2:
            raise ValueError(f"{self.name}: expected [N, in] input, got {x.shape}")
        self.output_shape(x.shape[1:])
        self._input = x
        return matmul(x, self.weights) + self.bias

    def backward(self, grad_out: Tensor) -> Tensor:
        x = self._require_cache(self._input)
        if grad_out.shape != (x.shape[0], self.weights.shape[1]):
            raise ValueError(f"{self.name}: grad_out shape {grad_out.shape} does not match output")
        self.weights_grad = matmul(x.T, grad_out)
        self.bias_grad = grad_out.sum(axis=0)
        return matmul(grad_out, self.weights.T)
