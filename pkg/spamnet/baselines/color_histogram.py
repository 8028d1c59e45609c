"""
Colour-histogram peak detector.

Natural photographs spread their colours over many cells of a coarse RGB histogram,
while synthetic spam renders text on a few flat colours, which shows up as isolated
peaks. The detector scores an image by the mass held in its ``top_k`` fullest cells.
"""
from dataclasses import dataclass

import numpy as np

from spamnet._utils.constants import HISTOGRAM_TAU, HISTOGRAM_TOP_K
from spamnet.tensor_core.tensor import Tensor

LEVELS = 4
BINS = LEVELS ** 3


@dataclass
class ColorHistogram:
    bins: np.ndarray

    def __post_init__(self):
        if self.bins.shape != (BINS,):
            raise ValueError(f"Expected {BINS} bins, got {self.bins.shape}")
        if (self.bins < 0).any() or abs(float(self.bins.sum()) - 1.0) > 1e-6:
            raise ValueError("Histogram bins must be non-negative and sum to 1")


def quantize(pixels: Tensor) -> np.ndarray:
    """Bin index r*16 + g*4 + b of every pixel, 2 bits per channel."""
    levels = np.rint(np.asarray(pixels, dtype=np.float64) * 255.0).astype(np.int64) >> 6
    red, green, blue = levels.reshape(3, -1)
    return red * LEVELS * LEVELS + green * LEVELS + blue


def color_histogram(pixels: Tensor) -> ColorHistogram:
    counts = np.bincount(quantize(pixels), minlength=BINS).astype(np.float64)
    return ColorHistogram(bins=counts / counts.sum())


def peak_spam_score(histogram: ColorHistogram, top_k: int = HISTOGRAM_TOP_K) -> float:
    if not 1 <= top_k <= BINS:
        raise ValueError(f"top_k must be in [1, {BINS}], got {top_k}")
    return float(np.sort(histogram.bins)[::-1][:top_k].sum())


def is_spam(score: float, tau: float = HISTOGRAM_TAU) -> bool:
    return score >= tau
