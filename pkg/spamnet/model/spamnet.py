import hashlib
from dataclasses import dataclass, field

import numpy as np

from spamnet._utils.constants import CHANNELS, DEFAULT_DROPOUT, IMAGE_SIZE
from spamnet.layers.activation import ActivationKind, ActivationLayer
from spamnet.layers.base import Layer, Mode
from spamnet.layers.conv import Conv2DLayer, Padding
from spamnet.layers.dense import DenseLayer
from spamnet.layers.dropout import DropoutLayer
from spamnet.layers.flatten import FlattenLayer
from spamnet.layers.pooling import MaxPool2DLayer
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor

INPUT_SHAPE = (CHANNELS, IMAGE_SIZE, IMAGE_SIZE)

# Per-sample output shape of every layer, in stack order.
LAYER_OUTPUT_SHAPES: list[tuple[str, tuple[int, ...]]] = [
    ("conv2d_1", (32, 56, 56)),
    ("activation_1", (32, 56, 56)),
    ("conv2d_2", (32, 54, 54)),
    ("activation_2", (32, 54, 54)),
    ("max_pooling2d_1", (32, 27, 27)),
    ("dropout_1", (32, 27, 27)),
    ("conv2d_3", (64, 27, 27)),
    ("activation_3", (64, 27, 27)),
    ("conv2d_4", (64, 25, 25)),
    ("activation_4", (64, 25, 25)),
    ("max_pooling2d_2", (64, 12, 12)),
    ("dropout_2", (64, 12, 12)),
    ("flatten_1", (9216,)),
    ("dense_1", (128,)),
    ("activation_5", (128,)),
    ("dropout_3", (128,)),
    ("dense_2", (1,)),
    ("activation_6", (1,)),
]


@dataclass
class LayerSummary:
    name: str
    kind: str
    output_shape: tuple[int, ...]
    param_count: int


@dataclass(eq=False)
class SpamNet:
    layers: list[Layer]
    mode: Mode = Mode.TRAIN
    dropout_rate: float = DEFAULT_DROPOUT
    _by_name: dict[str, Layer] = field(init=False, repr=False)

    def __post_init__(self):
        self._by_name = {layer.name: layer for layer in self.layers}
        if len(self._by_name) != len(self.layers):
            raise ValueError("Layer names must be unique")
        self.set_mode(self.mode)

    def layer(self, name: str) -> Layer:
        return self._by_name[name]

    def set_mode(self, mode: Mode) -> None:
        self.mode = Mode(mode)
        for layer in self.layers:
            if isinstance(layer, DropoutLayer):
                layer.mode = self.mode

    def train(self) -> None:
        self.set_mode(Mode.TRAIN)

    def eval(self) -> None:
        self.set_mode(Mode.EVAL)

    def forward(self, x: Tensor, rng: Rng | None = None) -> Tensor:
        if x.ndim != 4 or x.shape[1:] != INPUT_SHAPE:
            raise ValueError(f"Expected input [N, {', '.join(map(str, INPUT_SHAPE))}], got {list(x.shape)}")
        for layer in self.layers:
            x = layer.forward(x, rng)
        return x

    def backward(self, grad_out: Tensor) -> Tensor:
        for layer in reversed(self.layers):
            grad_out = layer.backward(grad_out)
        return grad_out

    def parameters(self) -> dict[str, Tensor]:
        """Parameters keyed ``<layer>.<param>``, in stack order."""
        return {f"{layer.name}.{key}": value
                for layer in self.layers
                for key, value in layer.parameters().items()}

    def gradients(self) -> dict[str, Tensor]:
        return {f"{layer.name}.{key}": value
                for layer in self.layers
                for key, value in layer.gradients().items()}

    def load_parameters(self, values: dict[str, Tensor]) -> None:
        expected = self.parameters()
        if set(values) != set(expected):
            missing = sorted(set(expected) - set(values))
            extra = sorted(set(values) - set(expected))
            raise ValueError(f"Parameter names do not match the network (missing {missing}, unexpected {extra})")
        for layer in self.layers:
            own = {key: values[f"{layer.name}.{key}"] for key in layer.parameters()}
            if own:
                layer.set_parameters({key: np.array(value, dtype=np.float32) for key, value in own.items()})

    def param_count(self) -> int:
        return sum(layer.param_count() for layer in self.layers)

    def identifier(self) -> str:
        digest = hashlib.sha256()
        for name, value in self.parameters().items():
            digest.update(name.encode("utf-8"))
            digest.update(np.ascontiguousarray(value, dtype="<f4").tobytes())
        return f"spamnet:{digest.hexdigest()[:12]}"


def build_spamnet(rng: Rng, dropout_rate: float = DEFAULT_DROPOUT) -> SpamNet:
    """Glorot-initialised weights, zero biases."""
    layers: list[Layer] = [
        Conv2DLayer.create("conv2d_1", rng, 3, 32, Padding.SAME),
        ActivationLayer("activation_1", ActivationKind.RELU),
        Conv2DLayer.create("conv2d_2", rng, 32, 32, Padding.VALID),
        ActivationLayer("activation_2", ActivationKind.RELU),
        MaxPool2DLayer("max_pooling2d_1"),
        DropoutLayer("dropout_1", dropout_rate),
        Conv2DLayer.create("conv2d_3", rng, 32, 64, Padding.SAME),
        ActivationLayer("activation_3", ActivationKind.RELU),
        Conv2DLayer.create("conv2d_4", rng, 64, 64, Padding.VALID),
        ActivationLayer("activation_4", ActivationKind.RELU),
        MaxPool2DLayer("max_pooling2d_2"),
        DropoutLayer("dropout_2", dropout_rate),
        FlattenLayer("flatten_1"),
        DenseLayer.create("dense_1", rng, 9216, 128),
        ActivationLayer("activation_5", ActivationKind.RELU),
        DropoutLayer("dropout_3", dropout_rate),
        DenseLayer.create("dense_2", rng, 128, 1),
        ActivationLayer("activation_6", ActivationKind.SIGMOID),
    ]
    return SpamNet(layers=layers, dropout_rate=dropout_rate)


def summarize(net: SpamNet, input_shape: tuple[int, ...] = INPUT_SHAPE) -> list[LayerSummary]:
    rows = []
    shape = tuple(input_shape)
    for layer in net.layers:
        shape = layer.output_shape(shape)
        rows.append(LayerSummary(layer.name, layer.kind, shape, layer.param_count()))
    return rows
