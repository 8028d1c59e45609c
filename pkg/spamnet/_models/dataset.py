import hashlib
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from spamnet._models.label import Label, SplitTag
from spamnet._utils.constants import CHANNELS, IMAGE_SIZE
from spamnet.tensor_core.tensor import Tensor


@dataclass
class LabeledImage:
    pixels: Tensor
    label: Label
    source_id: str

    def __post_init__(self):
        if self.pixels.shape != (CHANNELS, IMAGE_SIZE, IMAGE_SIZE):
            raise ValueError(f"{self.source_id}: pixels must be [3, 56, 56], got {self.pixels.shape}")
        if not np.isfinite(self.pixels).all() or self.pixels.min() < 0.0 or self.pixels.max() > 1.0:
            raise ValueError(f"{self.source_id}: pixel values must be finite and within [0, 1]")
        self.label = Label(self.label)


@dataclass
class Dataset:
    samples: list[LabeledImage] = field(default_factory=list)
    split_tag: SplitTag = SplitTag.ALL
    seed: int | None = None
    source_digest: str | None = None
    warnings: list[str] = field(default_factory=list)
    skipped: int = 0

    def add_sample(self, sample: LabeledImage) -> None:
        self.samples.append(sample)

    def __len__(self) -> int:
        return len(self.samples)

    def class_counts(self) -> dict[Label, int]:
        counts = Counter(sample.label for sample in self.samples)
        return {label: counts.get(label, 0) for label in (Label.SPAM, Label.HAM)}

    def images(self) -> Tensor:
        if not self.samples:
            return np.zeros((0, CHANNELS, IMAGE_SIZE, IMAGE_SIZE), dtype=np.float32)
        return np.stack([sample.pixels for sample in self.samples]).astype(np.float32, copy=False)

    def labels(self) -> np.ndarray:
        return np.array([int(sample.label) for sample in self.samples], dtype=np.int64)

    def source_ids(self) -> list[str]:
        return [sample.source_id for sample in self.samples]

    def digest(self) -> str:
        """Content hash over source ids, labels and pixel bytes, in sample order."""
        sha = hashlib.sha256()
        for sample in self.samples:
            sha.update(sample.source_id.encode("utf-8"))
            sha.update(bytes([int(sample.label)]))
            sha.update(np.ascontiguousarray(sample.pixels, dtype="<f4").tobytes())
        return sha.hexdigest()
