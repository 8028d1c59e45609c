from dataclasses import dataclass, field

import numpy as np

from spamnet.tensor_core.rng import Rng


@dataclass
class LinearClassifier:
    """Max-margin hyperplane; ``predict`` returns sign(w.x + b) with 0 mapped to +1."""
    weights: np.ndarray
    bias: float = 0.0
    objective_history: list[float] = field(default_factory=list, repr=False)

    def decision_function(self, features: np.ndarray) -> np.ndarray:
        return np.asarray(features, dtype=np.float64) @ self.weights + self.bias

    def predict(self, features: np.ndarray) -> np.ndarray:
        return np.where(self.decision_function(features) >= 0.0, 1, -1)


def hinge_objective(classifier: LinearClassifier, features: np.ndarray, labels: np.ndarray, reg: float) -> float:
    margins = labels * classifier.decision_function(features)
    return float(0.5 * reg * classifier.weights @ classifier.weights + np.maximum(0.0, 1.0 - margins).mean())


def train_linear(features: np.ndarray, labels: np.ndarray, epochs: int, lr: float, reg: float,
                 rng: Rng) -> LinearClassifier:
    """
    Per-sample subgradient descent on reg/2 |w|^2 + mean(max(0, 1 - y (w.x + b))).

    ``labels`` are -1/+1; samples are visited in a fresh seeded order every epoch.
    The objective after each epoch is kept in ``objective_history``.
    """
    features = np.asarray(features, dtype=np.float64)
    labels = np.asarray(labels)
    if features.ndim != 2 or labels.shape != (features.shape[0],):
        raise ValueError(f"Expected features [N, D] and labels [N], got {features.shape} and {labels.shape}")
    if not np.isin(labels, (-1, 1)).all():
        raise ValueError("Labels must be -1 or +1")
    if len(np.unique(labels)) < 2:
        raise ValueError("Training a linear classifier needs samples of both classes")
    if epochs < 1 or lr <= 0 or reg < 0:
        raise ValueError(f"Invalid schedule: epochs={epochs}, lr={lr}, reg={reg}")

    classifier = LinearClassifier(weights=np.zeros(features.shape[1]))
    for _ in range(epochs):
        for i in rng.permutation(len(labels)):
            x, y = features[i], labels[i]
            violated = y * (x @ classifier.weights + classifier.bias) < 1.0
            classifier.weights *= 1.0 - lr * reg
            if violated:
                classifier.weights += lr * y * x
                classifier.bias += lr * y
        classifier.objective_history.append(hinge_objective(classifier, features, labels, reg))
    return classifier
