"""LSTM and GRU cells and their sequence unrolling."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from core import ShapeMismatch

from .ops import sigmoid, tanh, timestep
from .tensor import Tensor

LSTM_GATES = ("i", "f", "o", "g")
GRU_GATES = ("z", "r", "h")


def gate_names(gates: tuple[str, ...]) -> list[str]:
    return [f"{kind}_{gate}" for kind in ("W", "U", "b") for gate in gates]


def _check_cell(x_t: Tensor, h_prev: Tensor, params: Mapping[str, Tensor], gates: tuple[str, ...], op: str) -> None:
    missing = [name for name in gate_names(gates) if name not in params]
    if missing:
        raise ShapeMismatch(f"missing cell parameters {missing}", operation=op)
    hidden = params[f"U_{gates[0]}"].shape[0]
    if x_t.data.ndim != 2 or h_prev.data.ndim != 2 or h_prev.shape[1] != hidden:
        raise ShapeMismatch(f"state {h_prev.shape} does not match hidden size {hidden}", operation=op)
    for gate in gates:
        w, u, b = params[f"W_{gate}"], params[f"U_{gate}"], params[f"b_{gate}"]
        if w.shape != (x_t.shape[1], hidden) or u.shape != (hidden, hidden) or b.shape != (hidden,):
            raise ShapeMismatch(
                f"gate {gate}: W{w.shape} U{u.shape} b{b.shape} for input width {x_t.shape[1]}, hidden {hidden}",
                operation=op,
            )


def lstm_cell(
    x_t: Tensor,
    h_prev: Tensor,
    c_prev: Tensor,
    params: Mapping[str, Tensor],
) -> tuple[Tensor, Tensor]:
    _check_cell(x_t, h_prev, params, LSTM_GATES, "lstm_cell")
    if c_prev.shape != h_prev.shape:
        raise ShapeMismatch(f"cell state {c_prev.shape} differs from hidden {h_prev.shape}", operation="lstm_cell")

    def pre(gate: str, h: Tensor) -> Tensor:
        return x_t @ params[f"W_{gate}"] + h @ params[f"U_{gate}"] + params[f"b_{gate}"]

    i = sigmoid(pre("i", h_prev))
    f = sigmoid(pre("f", h_prev))
    o = sigmoid(pre("o", h_prev))
    g = tanh(pre("g", h_prev))
    c_t = f * c_prev + i * g
    h_t = o * tanh(c_t)
    return h_t, c_t


def gru_cell(x_t: Tensor, h_prev: Tensor, params: Mapping[str, Tensor]) -> Tensor:
    """h_t = (1 - z) * h_prev + z * candidate."""
    _check_cell(x_t, h_prev, params, GRU_GATES, "gru_cell")
    z = sigmoid(x_t @ params["W_z"] + h_prev @ params["U_z"] + params["b_z"])
    r = sigmoid(x_t @ params["W_r"] + h_prev @ params["U_r"] + params["b_r"])
    candidate = tanh(x_t @ params["W_h"] + (r * h_prev) @ params["U_h"] + params["b_h"])
    return (1.0 - z) * h_prev + z * candidate


def run_lstm(x: Tensor, params: Mapping[str, Tensor], hidden: int) -> Tensor:
    """Unroll over the time axis of x (batch, C, L); returns the last hidden state."""
    batch = x.shape[0]
    h = Tensor(_zeros(batch, hidden))
    c = Tensor(_zeros(batch, hidden))
    for t in range(x.shape[2]):
        h, c = lstm_cell(timestep(x, t), h, c, params)
    return h


def run_gru(x: Tensor, params: Mapping[str, Tensor], hidden: int) -> Tensor:
    batch = x.shape[0]
    h = Tensor(_zeros(batch, hidden))
    for t in range(x.shape[2]):
        h = gru_cell(timestep(x, t), h, params)
    return h


def _zeros(batch: int, hidden: int) -> np.ndarray:
    return np.zeros((batch, hidden), dtype=np.float64)
