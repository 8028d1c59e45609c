from dataclasses import dataclass
from pathlib import Path

import numpy as np

from spamnet._models.dataset import Dataset
from spamnet._models.train_config import TrainConfig
from spamnet.data.dataset import batches
from spamnet.layers.base import Mode
from spamnet.loss_optim.loss import bce_loss
from spamnet.loss_optim.optimizers import AdamState, adam_step
from spamnet.model.checkpoint import save_checkpoint
from spamnet.model.spamnet import SpamNet
from spamnet.tensor_core.rng import Rng
from spamnet.tensor_core.tensor import Tensor

PREDICT_CHUNK = 64


@dataclass
class EpochRecord:
    epoch: int
    loss: float
    accuracy: float

    def to_line(self) -> str:
        return f"epoch={self.epoch} loss={self.loss:.4f} accuracy={self.accuracy:.4f}"


def train_step(net: SpamNet, batch_images: Tensor, batch_labels: Tensor, adam: AdamState, rng: Rng) -> float:
    """Forward, BCE, backward and one Adam step; returns the loss before the update."""
    loss, _ = _train_step(net, batch_images, batch_labels, adam, rng)
    return loss


def _train_step(net: SpamNet, images: Tensor, labels: Tensor, adam: AdamState, rng: Rng) -> tuple[float, Tensor]:
    if net.mode is not Mode.TRAIN:
        raise ValueError("train_step needs the network in train mode")
    if images.shape[0] != labels.shape[0] or labels.shape[1:] != (1,):
        raise ValueError(f"Batch of {images.shape[0]} images does not match labels {labels.shape}")
    probabilities = net.forward(images, rng)
    loss, grad = bce_loss(probabilities, labels)
    net.backward(grad)
    adam_step(adam, net.parameters(), net.gradients())
    return loss, probabilities


def epoch_checkpoint_path(path: Path, epoch: int) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}.epoch{epoch:04d}{path.suffix}")


def fit(net: SpamNet, train_set: Dataset, config: TrainConfig, adam: AdamState, rng: Rng | None = None,
        checkpoint_path: Path | None = None, echo: bool = True) -> list[EpochRecord]:
    """
    Train for ``config.epochs`` epochs of seeded, shuffled mini-batches.

    Every ``config.checkpoint_every`` epochs a snapshot is written next to
    ``checkpoint_path``. Returns one record (mean loss, train accuracy) per epoch.
    """
    if len(train_set) == 0:
        raise ValueError("Cannot fit on an empty dataset")
    rng = rng or Rng(config.seed)
    net.train()
    log: list[EpochRecord] = []
    for epoch in range(1, config.epochs + 1):
        epoch_rng = rng.child(epoch)
        shuffle_rng, dropout_rng = epoch_rng.child(0), epoch_rng.child(1)
        loss_sum = 0.0
        correct = 0
        for images, labels in batches(train_set, config.batch_size, shuffle_rng):
            loss, probabilities = _train_step(net, images, labels, adam, dropout_rng)
            loss_sum += loss * len(labels)
            correct += int(np.sum((probabilities >= config.threshold) == (labels == 1)))
        record = EpochRecord(epoch, loss_sum / len(train_set), correct / len(train_set))
        log.append(record)
        if echo:
            print(record.to_line())
        if checkpoint_path is not None and config.checkpoint_every and epoch % config.checkpoint_every == 0:
            save_checkpoint(net, adam, epoch_checkpoint_path(checkpoint_path, epoch), epoch=epoch, seed=config.seed)
    return log


def predict(net: SpamNet, images: Tensor, threshold: float = 0.5) -> tuple[Tensor, np.ndarray]:
    """Eval-mode probabilities [N, 1] and labels [N] (1 = spam iff probability >= threshold)."""
    previous = net.mode
    net.eval()
    try:
        chunks = [net.forward(images[start:start + PREDICT_CHUNK])
                  for start in range(0, images.shape[0], PREDICT_CHUNK)]
    finally:
        net.set_mode(previous)
    if not chunks:
        raise ValueError("predict needs at least one image")
    probabilities = np.concatenate(chunks, axis=0)
    return probabilities, (probabilities[:, 0] >= threshold).astype(np.int64)
