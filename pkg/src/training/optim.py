"""AdamW with decoupled weight decay and bias correction."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class AdamWState(BaseModel):
    """First and second moment estimates per parameter name."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    step: int = 0
    m: dict[str, np.ndarray] = Field(default_factory=dict)
    v: dict[str, np.ndarray] = Field(default_factory=dict)


def adamw_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: AdamWState,
    lr: float,
    weight_decay: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> tuple[dict[str, np.ndarray], AdamWState]:
    """One AdamW update; returns new parameter arrays and the advanced state.

    The decay shrinks parameters by (1 - lr * weight_decay) before the
    moment-based step, independent of the gradient.
    """
    t = state.step + 1
    m_new: dict[str, np.ndarray] = {}
    v_new: dict[str, np.ndarray] = {}
    updated: dict[str, np.ndarray] = {}
    for name, p in params.items():
        g = grads[name]
        if g.shape != p.shape:
            raise ValueError(f"gradient for {name} has shape {g.shape}, parameter has {p.shape}")
        m = beta1 * state.m.get(name, np.zeros_like(p)) + (1.0 - beta1) * g
        v = beta2 * state.v.get(name, np.zeros_like(p)) + (1.0 - beta2) * g * g
        m_hat = m / (1.0 - beta1**t)
        v_hat = v / (1.0 - beta2**t)
        decayed = p * (1.0 - lr * weight_decay)
        updated[name] = decayed - lr * m_hat / (np.sqrt(v_hat) + eps)
        m_new[name], v_new[name] = m, v
    return updated, AdamWState(step=t, m=m_new, v=v_new)
