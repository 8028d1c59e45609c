from dataclasses import dataclass, field

import numpy as np

from spamnet._utils.constants import ADAM_BETA1, ADAM_BETA2, ADAM_EPS, ADAM_LR
from spamnet.tensor_core.tensor import Tensor


def _check_pairs(params: dict[str, Tensor], grads: dict[str, Tensor]) -> None:
    if set(params) != set(grads):
        raise ValueError(f"Parameter and gradient names differ: {sorted(set(params) ^ set(grads))}")
    for name, param in params.items():
        if grads[name].shape != param.shape:
            raise ValueError(f"{name}: gradient shape {grads[name].shape} does not match parameter {param.shape}")


@dataclass
class AdamState:
    lr: float = ADAM_LR
    beta1: float = ADAM_BETA1
    beta2: float = ADAM_BETA2
    eps: float = ADAM_EPS
    t: int = 0
    m: dict[str, Tensor] = field(default_factory=dict, repr=False)
    v: dict[str, Tensor] = field(default_factory=dict, repr=False)

    @classmethod
    def for_parameters(cls, params: dict[str, Tensor], **hyper) -> "AdamState":
        return cls(
            m={name: np.zeros_like(p) for name, p in params.items()},
            v={name: np.zeros_like(p) for name, p in params.items()},
            **hyper,
        )


def adam_step(state: AdamState, params: dict[str, Tensor], grads: dict[str, Tensor]) -> dict[str, Tensor]:
    """One Adam update, applied to ``params`` in place."""
    _check_pairs(params, grads)
    for name, param in params.items():
        state.m.setdefault(name, np.zeros_like(param))
        state.v.setdefault(name, np.zeros_like(param))
        if state.m[name].shape != param.shape or state.v[name].shape != param.shape:
            raise ValueError(f"{name}: optimizer moments do not match parameter shape {param.shape}")

    state.t += 1
    m_correction = 1.0 - state.beta1 ** state.t
    v_correction = 1.0 - state.beta2 ** state.t
    for name, param in params.items():
        g = grads[name]
        m = state.m[name]
        v = state.v[name]
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * np.square(g)
        step = state.lr * (m / m_correction) / (np.sqrt(v / v_correction) + state.eps)
        param -= step.astype(param.dtype)
    return params


def sgd_step(params: dict[str, Tensor], grads: dict[str, Tensor], lr: float) -> dict[str, Tensor]:
    _check_pairs(params, grads)
    for name, param in params.items():
        param -= (lr * grads[name]).astype(param.dtype)
    return params
