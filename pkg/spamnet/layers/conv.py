from dataclasses import dataclass, field
from spamnet._utils.compat import StrEnum

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from spamnet.layers.base import ParametricLayer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor, glorot_uniform, zeros

KERNEL = 3


class Padding(StrEnum):
    SAME = "same"
    VALID = "valid"


@dataclass(eq=False)
class Conv2DLayer(ParametricLayer):
    """
    3x3, stride-1 cross-correlation over [N, C_in, H, W] inputs.

    ``same`` zero-pads one pixel on each side and keeps H x W; ``valid`` shrinks each
    spatial dimension by 2.
    """
    name: str
    weights: Tensor
    bias: Tensor
    padding: Padding = Padding.SAME
    weights_grad: Tensor = field(init=False, repr=False)
    bias_grad: Tensor = field(init=False, repr=False)
    _padded_input: Tensor | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.weights.ndim != 4 or self.weights.shape[2:] != (KERNEL, KERNEL):
            raise ValueError(f"{self.name}: weights must be [C_out, C_in, 3, 3], got {self.weights.shape}")
        if self.bias.shape != (self.weights.shape[0],):
            raise ValueError(f"{self.name}: bias must be [{self.weights.shape[0]}], got {self.bias.shape}")
        self.padding = Padding(self.padding)
        self.weights_grad = np.zeros_like(self.weights)
        self.bias_grad = np.zeros_like(self.bias)

    @classmethod
    def create(cls, name: str, rng: Rng, in_channels: int, out_channels: int, padding: Padding) -> "Conv2DLayer":
        fan_in = in_channels * KERNEL * KERNEL
        fan_out = out_channels * KERNEL * KERNEL
        return cls(
            name=name,
            weights=glorot_uniform(rng, fan_in, fan_out, (out_channels, in_channels, KERNEL, KERNEL)),
            bias=zeros((out_channels,)),
            padding=padding,
        )

    @property
    def in_channels(self) -> int:
        return self.weights.shape[1]

    @property
    def out_channels(self) -> int:
        return self.weights.shape[0]

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        channels, height, width = input_shape
        if channels != self.in_channels:
            raise ValueError(f"{self.name}: expected {self.in_channels} input channels, got {channels}")
        if self.padding is Padding.SAME:
            return self.out_channels, height, width
        if height < KERNEL or width < KERNEL:
            raise ValueError(f"{self.name}: valid padding needs H, W >= 3, got {height}x{width}")
        return self.out_channels, height - KERNEL + 1, width - KERNEL + 1

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        if x.ndim != 4:
            raise ValueError(f"{self.name}: expected [N, C, H, W] input, got {x.shape}")
        self.output_shape(x.shape[1:])
        if self.padding is Padding.SAME:
            x = np.pad(x, ((0, 0), (0, 0), (1, 1), (1, 1)))
        self._padded_input = x

        # windows: [N, C_in, H', W', 3, 3]
        windows = sliding_window_view(x, (KERNEL, KERNEL), axis=(2, 3))
        out = np.tensordot(windows, self.weights, axes=([1, 4, 5], [1, 2, 3]))
        out += self.bias
        return np.ascontiguousarray(out.transpose(0, 3, 1, 2))

    def backward(self, grad_out: Tensor) -> Tensor:
        padded = self._require_cache(self._padded_input)
        expected = (padded.shape[0], self.out_channels, padded.shape[2] - KERNEL + 1, padded.shape[3] - KERNEL + 1)
        if grad_out.shape != expected:
            raise ValueError(f"{self.name}: grad_out shape {grad_out.shape} does not match output {expected}")
        out_h, out_w = grad_out.shape[2:]

        windows = sliding_window_view(padded, (KERNEL, KERNEL), axis=(2, 3))
        self.weights_grad = np.tensordot(grad_out, windows, axes=([0, 2, 3], [0, 2, 3]))
        self.bias_grad = grad_out.sum(axis=(0, 2, 3))

        grad_padded = np.zeros(padded.shape, dtype=np.result_type(grad_out, self.weights))
        for i in range(KERNEL):
            for j in range(KERNEL):
                # [C_out, C_in] x [N, C_out, H', W'] -> [C_in, N, H', W']
                contribution = np.tensordot(self.weights[:, :, i, j], grad_out, axes=([0], [1]))
                grad_padded[:, :, i:i + out_h, j:j + out_w] += contribution.transpose(1, 0, 2, 3)

        if self.padding is Padding.SAME:
            return grad_padded[:, :, 1:-1, 1:-1].copy()
        return grad_padded
