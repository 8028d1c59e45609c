import numpy as np

from spamnet.tensor_core.tensor import Tensor

CLAMP = 1e-7


def bce_loss(pred: Tensor, target: Tensor) -> tuple[float, Tensor]:
    """
    Mean binary cross-entropy and its gradient with respect to ``pred``.

    Predictions are clamped to [1e-7, 1 - 1e-7] before the logarithms; the gradient is
    taken at the clamped value and returned in ``pred``'s dtype.
    """
    if pred.shape != target.shape or pred.ndim != 2 or pred.shape[1] != 1:
        raise ValueError(f"pred and target must both be [N, 1], got {pred.shape} and {target.shape}")
    if not np.isin(target, (0, 1)).all():
        raise ValueError("target entries must be 0 or 1")

    n = pred.shape[0]
    p = np.clip(pred.astype(np.float64), CLAMP, 1.0 - CLAMP)
    t = target.astype(np.float64)
    loss = -np.mean(t * np.log(p) + (1.0 - t) * np.log(1.0 - p))
    grad = (p - t) / (p * (1.0 - p)) / n
    return float(loss), grad.astype(pred.dtype)
