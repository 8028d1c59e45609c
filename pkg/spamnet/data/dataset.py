from concurrent.futures import ThreadPoolExecutor
from math import floor
from pathlib import Path
from typing import Iterator

import numpy as np

from spamnet._models.dataset import Dataset, LabeledImage
from spamnet._models.label import Label, SplitTag
from spamnet._utils.console import print_warning
from spamnet._utils.constants import DEFAULT_TRAIN_FRACTION
from spamnet.data.images import ImageDecodeError, load_image
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor

CLASS_DIRS = {Label.SPAM: "spam", Label.HAM: "ham"}


class CorpusError(Exception):
    pass


def _load_one(root: Path, path: Path, label: Label) -> tuple[LabeledImage | None, str | None]:
    source_id = path.relative_to(root).as_posix()
    try:
        return LabeledImage(pixels=load_image(path), label=label, source_id=source_id), None
    except (ImageDecodeError, OSError) as exc:
        return None, f"skipped {source_id}: {exc}"


def load_directory(root_path: Path, workers: int | None = None) -> Dataset:
    """
    Load every decodable image under ``spam/`` and ``ham/``.

    Files are visited in sorted order so the resulting sample order, and everything
    seeded from it, is reproducible. Undecodable files are skipped with a warning.
    """
    root = Path(root_path)
    if not root.is_dir():
        raise CorpusError(f"Corpus directory {root} does not exist")
    entries: list[tuple[Path, Label]] = []
    for label, dirname in CLASS_DIRS.items():
        class_dir = root / dirname
        if not class_dir.is_dir():
            raise CorpusError(f"Corpus {root} is missing the {dirname}/ subdirectory")
        entries.extend((path, label) for path in sorted(class_dir.iterdir()) if path.is_file())

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda entry: _load_one(root, *entry), entries))

    dataset = Dataset(split_tag=SplitTag.ALL)
    for sample, warning in results:
        if sample is None:
            dataset.skipped += 1
            dataset.warnings.append(warning)
        else:
            dataset.add_sample(sample)
    if not dataset.samples:
        raise CorpusError(f"No decodable images under {root} ({dataset.skipped} files skipped)")
    for label, count in dataset.class_counts().items():
        if count == 0:
            dataset.warnings.append(f"no {CLASS_DIRS[label]} images under {root / CLASS_DIRS[label]}")
    for warning in dataset.warnings:
        print_warning(warning)
    return dataset


def stratified_split(ds: Dataset, train_fraction: float = DEFAULT_TRAIN_FRACTION,
                     seed: int = 0) -> tuple[Dataset, Dataset]:
    """
    Per-class seeded shuffle; the first floor(fraction * n) samples of each class train.

    The shuffle is keyed by both ``seed`` and the corpus content hash, so any two
    commands that split the same corpus with the same seed agree on membership.
    """
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    for label, count in ds.class_counts().items():
        if count == 0:
            raise ValueError(f"Cannot split: the {CLASS_DIRS[label]} class is empty")

    digest = ds.digest()
    rng = Rng(seed).child(int(digest[:16], 16))
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in (Label.SPAM, Label.HAM):
        members = np.array([i for i, sample in enumerate(ds.samples) if sample.label == label])
        shuffled = members[rng.permutation(len(members))]
        n_train = floor(len(members) * train_fraction + 1e-9)
        train_idx.extend(shuffled[:n_train].tolist())
        test_idx.extend(shuffled[n_train:].tolist())

    def subset(indices: list[int], tag: SplitTag) -> Dataset:
        return Dataset(samples=[ds.samples[i] for i in sorted(indices)], split_tag=tag,
                       seed=seed, source_digest=digest)

    return subset(train_idx, SplitTag.TRAIN), subset(test_idx, SplitTag.TEST)


def batches(ds: Dataset, batch_size: int, rng: Rng) -> Iterator[tuple[Tensor, Tensor]]:
    """Shuffled (images [B, 3, 56, 56], labels [B, 1]) pairs; the last batch may be short."""
    if batch_size < 1:
        raise ValueError(f"batch_size must be >= 1, got {batch_size}")
    order = rng.permutation(len(ds))
    for start in range(0, len(order), batch_size):
        members = [ds.samples[i] for i in order[start:start + batch_size]]
        images = np.stack([sample.pixels for sample in members]).astype(np.float32, copy=False)
        labels = np.array([[float(sample.label)] for sample in members], dtype=np.float32)
        yield images, labels
