from abc import ABC, abstractmethod
from spamnet._utils.compat import StrEnum

import numpy as np

from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor


class Mode(StrEnum):
    TRAIN = "train"
    EVAL = "eval"


class Layer(ABC):
    """
    A network layer with an explicit forward/backward pair.

    ``forward`` caches whatever ``backward`` needs; a layer instance therefore serves
    one forward/backward pair at a time. Parametric layers expose their parameters
    and the gradients of the last backward call by name.
    """
    name: str

    @property
    def kind(self) -> str:
        return type(self).__name__.removesuffix("Layer")

    @abstractmethod
    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        ...

    @abstractmethod
    def backward(self, grad_out: Tensor) -> Tensor:
        ...

    @abstractmethod
    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        """Shape of one sample's output (batch axis excluded)."""

    def parameters(self) -> dict[str, Tensor]:
        return {}

    def gradients(self) -> dict[str, Tensor]:
        return {}

    def set_parameters(self, values: dict[str, Tensor]) -> None:
        if values:
            raise ValueError(f"{self.name} has no parameters")

    def param_count(self) -> int:
        return sum(p.size for p in self.parameters().values())

    def _require_cache(self, cache):
        if cache is None:
            raise RuntimeError(f"{self.name}: backward called before forward")
        return cache


class ParametricLayer(Layer):
    weights: Tensor
    bias: Tensor
    weights_grad: Tensor
    bias_grad: Tensor

    def parameters(self) -> dict[str, Tensor]:
        return {"weights": self.weights, "bias": self.bias}

    def gradients(self) -> dict[str, Tensor]:
        return {"weights": self.weights_grad, "bias": self.bias_grad}

    def set_parameters(self, values: dict[str, Tensor]) -> None:
        current = self.parameters()
        if set(values) != set(current):
            raise ValueError(f"{self.name}: expected parameters {sorted(current)}, got {sorted(values)}")
        for key, value in values.items():
            if value.shape != current[key].shape:
                raise ValueError(f"{self.name}.{key}: expected shape {current[key].shape}, got {value.shape}")
        self.weights = values["weights"]
        self.bias = values["bias"]
        self.weights_grad = np.zeros_like(self.weights)
        self.bias_grad = np.zeros_like(self.bias)
