"""
Histogram of oriented gradients.

Grayscale luma, [-1, 0, 1] central differences with replicated borders, unsigned
orientation in [0, 180) voted into 9 bins centred at 0, 20, ..., 160 degrees with
linear interpolation between neighbouring bins (bin 8 wraps to bin 0). Cells are 8x8
pixels; every 2x2 block of cells is L2-normalised, v / sqrt(|v|^2 + eps^2).
"""
from dataclasses import dataclass

import numpy as np

from spamnet._utils.constants import IMAGE_SIZE
from spamnet.tensor_core.tensor import Tensor

CELL = 8
ORIENTATIONS = 9
BLOCK = 2
EPS = 1e-6
LUMA = np.array([0.299, 0.587, 0.114])

CELLS = IMAGE_SIZE // CELL
BLOCKS = CELLS - BLOCK + 1
DESCRIPTOR_LENGTH = BLOCKS * BLOCKS * BLOCK * BLOCK * ORIENTATIONS


@dataclass
class HogDescriptor:
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (DESCRIPTOR_LENGTH,):
            raise ValueError(f"Expected {DESCRIPTOR_LENGTH} values, got {self.values.shape}")


def grayscale(pixels: Tensor) -> np.ndarray:
    return np.tensordot(LUMA, np.asarray(pixels, dtype=np.float64), axes=1)


def gradients(gray: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    padded = np.pad(gray, 1, mode="edge")
    gx = padded[1:-1, 2:] - padded[1:-1, :-2]
    gy = padded[2:, 1:-1] - padded[:-2, 1:-1]
    return gx, gy


def cell_histograms(gray: np.ndarray) -> np.ndarray:
    gx, gy = gradients(gray)
    magnitude = np.hypot(gx, gy)
    angle = np.mod(np.degrees(np.arctan2(gy, gx)), 180.0)
    position = angle / (180.0 / ORIENTATIONS)
    lower = np.floor(position).astype(np.int64) % ORIENTATIONS
    upper = (lower + 1) % ORIENTATIONS
    upper_weight = position - np.floor(position)

    rows, cols = np.indices(gray.shape)
    cell_rows, cell_cols = rows // CELL, cols // CELL
    inside = (cell_rows < CELLS) & (cell_cols < CELLS)

    hist = np.zeros((CELLS, CELLS, ORIENTATIONS))
    np.add.at(hist, (cell_rows[inside], cell_cols[inside], lower[inside]),
              (magnitude * (1.0 - upper_weight))[inside])
    np.add.at(hist, (cell_rows[inside], cell_cols[inside], upper[inside]),
              (magnitude * upper_weight)[inside])
    return hist


def hog_features(pixels: Tensor) -> HogDescriptor:
    """Descriptor of a [3, 56, 56] image: 6 x 6 blocks of 2 x 2 cells x 9 bins = 1296 values."""
    if pixels.shape != (3, IMAGE_SIZE, IMAGE_SIZE):
        raise ValueError(f"Expected a [3, {IMAGE_SIZE}, {IMAGE_SIZE}] image, got {pixels.shape}")
    hist = cell_histograms(grayscale(pixels))
    blocks = []
    for i in range(BLOCKS):
        for j in range(BLOCKS):
            block = hist[i:i + BLOCK, j:j + BLOCK].ravel()
            blocks.append(block / np.sqrt(np.sum(block ** 2) + EPS ** 2))
    return HogDescriptor(values=np.concatenate(blocks))
