"""Adam optimizer over ParamSets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from core import ShapeMismatch

from .params import ParamSet


@dataclass
class AdamState:
    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    t: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)


def adam_step(
    params: ParamSet,
    grads: Mapping[str, np.ndarray],
    state: AdamState,
) -> tuple[ParamSet, AdamState]:
    """One bias-corrected Adam update.

    The state is advanced in place and returned alongside the new parameters;
    the input ParamSet is left untouched.
    """
    missing = [name for name in params if name not in grads]
    if missing:
        raise ShapeMismatch(f"no gradient for {missing}", operation="adam_step")

    state.t += 1
    bc1 = 1.0 - state.beta1**state.t
    bc2 = 1.0 - state.beta2**state.t

    updated: list[tuple[str, np.ndarray]] = []
    for name, value in params.items():
        g = np.asarray(grads[name], dtype=np.float64)
        if g.shape != value.shape:
            raise ShapeMismatch(f"gradient for '{name}' has shape {g.shape}, expected {value.shape}",
                                operation="adam_step")
        if name not in state.m:
            state.m[name] = np.zeros_like(value)
            state.v[name] = np.zeros_like(value)
        m = state.beta1 * state.m[name] + (1.0 - state.beta1) * g
        v = state.beta2 * state.v[name] + (1.0 - state.beta2) * (g * g)
        state.m[name], state.v[name] = m, v
        m_hat = m / bc1
        v_hat = v / bc2
        updated.append((name, value - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)))
    return ParamSet(updated), state
