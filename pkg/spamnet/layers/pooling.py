from dataclasses import dataclass, field

import numpy as np

from spamnet.layers.base import Layer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor

WINDOW = 2


@dataclass(eq=False)
class MaxPool2DLayer(Layer):
    """
    2x2 max pooling with stride 2.

    A trailing odd row/column is dropped. Ties go to the first position of the window
    in row-major order, which is what ``argmax`` returns.
    """
    name: str
    _argmax: np.ndarray | None = field(default=None, init=False, repr=False)
    _input_shape: tuple[int, ...] | None = field(default=None, init=False, repr=False)

    def output_shape(self, input_shape: tuple[int, ...]) -> tuple[int, ...]:
        channels, height, width = input_shape
        if height < WINDOW or width < WINDOW:
            raise ValueError(f"{self.name}: pooling needs H, W >= 2, got {height}x{width}")
        return channels, height // WINDOW, width // WINDOW

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        if x.ndim != 4:
            raise ValueError(f"{self.name}: expected [N, C, H, W] input, got {x.shape}")
        n = x.shape[0]
        channels, out_h, out_w = self.output_shape(x.shape[1:])
        cropped = x[:, :, :out_h * WINDOW, :out_w * WINDOW]
        # [N, C, H', W', 4]; the last axis walks each window in row-major order
        windows = (cropped.reshape(n, channels, out_h, WINDOW, out_w, WINDOW)
                   .transpose(0, 1, 2, 4, 3, 5)
                   .reshape(n, channels, out_h, out_w, WINDOW * WINDOW))
        self._argmax = windows.argmax(axis=-1)
        self._input_shape = x.shape
        return np.take_along_axis(windows, self._argmax[..., None], axis=-1)[..., 0]

    def backward(self, grad_out: Tensor) -> Tensor:
        argmax = self._require_cache(self._argmax)
        if grad_out.shape != argmax.shape:
            raise ValueError(f"{self.name}: grad_out shape {grad_out.shape} does not match output {argmax.shape}")
        n, channels, out_h, out_w = grad_out.shape
        routed = np.zeros((n, channels, out_h, out_w, WINDOW * WINDOW), dtype=grad_out.dtype)
        np.put_along_axis(routed, argmax[..., None], grad_out[..., None], axis=-1)
        routed = (routed.reshape(n, channels, out_h, out_w, WINDOW, WINDOW)
                  .transpose(0, 1, 2, 4, 3, 5)
                  .reshape(n, channels, out_h * WINDOW, out_w * WINDOW))
        grad_in = np.zeros(self._input_shape, dtype=grad_out.dtype)
        grad_in[:, :, :out_h * WINDOW, :out_w * WINDOW] = routed
        return grad_in
