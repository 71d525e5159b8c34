"""Differentiable layer operations built on Tensor."""

from __future__ import annotations

import numpy as np

from core import InvalidStride, ShapeMismatch

from .tensor import Tensor, _result, as_tensor, check_finite

PROB_FLOOR = 1e-12


def _require(cond: bool, message: str, op: str) -> None:
    if not cond:
        raise ShapeMismatch(message, operation=op)


def dense_forward(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
    """y = xW + b for x of shape (batch, in)."""
    _require(x.data.ndim == 2 and w.data.ndim == 2 and b.data.ndim == 1,
             f"dense expects 2-D x/W and 1-D b, got {x.shape}, {w.shape}, {b.shape}", "dense_forward")
    _require(x.shape[1] == w.shape[0] and w.shape[1] == b.shape[0],
             f"dense shapes do not conform: x{x.shape} W{w.shape} b{b.shape}", "dense_forward")
    return x @ w + b


def relu(x: Tensor) -> Tensor:
    mask = x.data > 0
    out = _result(np.where(mask, x.data, 0.0), (x,), lambda g: x.accumulate(g * mask), "relu")
    check_finite(out.data, "relu")
    return out


def sigmoid(x: Tensor) -> Tensor:
    # Split by sign so exp never overflows.
    z = x.data
    out_data = np.empty_like(z)
    pos = z >= 0
    out_data[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out_data[~pos] = ez / (1.0 + ez)
    return _result(out_data, (x,), lambda g: x.accumulate(g * out_data * (1.0 - out_data)), "sigmoid")


def tanh(x: Tensor) -> Tensor:
    out_data = np.tanh(x.data)
    return _result(out_data, (x,), lambda g: x.accumulate(g * (1.0 - out_data * out_data)), "tanh")


def _softmax_rows(z: np.ndarray) -> np.ndarray:
    shifted = z - z.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def softmax(x: Tensor) -> Tensor:
    """Row-wise softmax with max subtraction."""
    _require(x.data.ndim == 2, f"softmax expects (batch, K), got {x.shape}", "softmax")
    p = _softmax_rows(x.data)
    check_finite(p, "softmax")

    def backward(g: np.ndarray) -> None:
        x.accumulate(p * (g - (g * p).sum(axis=1, keepdims=True)))

    return _result(p, (x,), backward, "softmax")


def one_hot(labels: np.ndarray, n_classes: int) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64)
    out = np.zeros((labels.shape[0], n_classes), dtype=np.float64)
    out[np.arange(labels.shape[0]), labels] = 1.0
    return out


def _check_targets(probs: np.ndarray, targets: np.ndarray, op: str) -> None:
    _require(probs.ndim == 2 and probs.shape == targets.shape,
             f"predictions {probs.shape} and one-hot labels {targets.shape} differ", op)
    _require(bool(np.all(targets.sum(axis=1) == 1.0)), "labels must be one-hot rows", op)


def cross_entropy_loss(probs: Tensor, labels: Tensor | np.ndarray) -> Tensor:
    """Mean over the batch of -log p_true, with p floored at 1e-12."""
    y = labels.data if isinstance(labels, Tensor) else np.asarray(labels, dtype=np.float64)
    _check_targets(probs.data, y, "cross_entropy_loss")
    batch = probs.shape[0]
    clipped = np.maximum(probs.data, PROB_FLOOR)
    loss = -np.sum(y * np.log(clipped)) / batch

    def backward(g: np.ndarray) -> None:
        probs.accumulate(-g * y / (clipped * batch))

    return _result(np.asarray(loss), (probs,), backward, "cross_entropy")


def softmax_cross_entropy(logits: Tensor, labels: np.ndarray) -> Tensor:
    """Fused softmax + cross-entropy whose logit gradient is exactly (p - y) / batch."""
    y = np.asarray(labels, dtype=np.float64)
    p = _softmax_rows(logits.data)
    check_finite(p, "softmax_cross_entropy")
    _check_targets(p, y, "softmax_cross_entropy")
    batch = logits.shape[0]
    loss = -np.sum(y * np.log(np.maximum(p, PROB_FLOOR))) / batch

    def backward(g: np.ndarray) -> None:
        logits.accumulate(g * (p - y) / batch)

    return _result(np.asarray(loss), (logits,), backward, "softmax_cross_entropy")


def conv1d_output_length(length: int, kernel: int, stride: int) -> int:
    return (length - kernel) // stride + 1


def conv1d_forward(x: Tensor, kernels: Tensor, bias: Tensor, stride: int = 1) -> Tensor:
    """Valid cross-correlation over time: (batch, C, L) * (F, C, k) -> (batch, F, L_out)."""
    if stride < 1:
        raise InvalidStride(f"stride must be >= 1, got {stride}", operation="conv1d_forward")
    _require(x.data.ndim == 3 and kernels.data.ndim == 3 and bias.data.ndim == 1,
             f"conv1d expects x(B,C,L), K(F,C,k), b(F); got {x.shape}, {kernels.shape}, {bias.shape}",
             "conv1d_forward")
    batch, channels, length = x.shape
    filters, k_channels, width = kernels.shape
    _require(channels == k_channels and bias.shape[0] == filters,
             f"conv1d channel/filter mismatch: x{x.shape} K{kernels.shape} b{bias.shape}", "conv1d_forward")
    _require(width <= length, f"kernel width {width} exceeds sequence length {length}", "conv1d_forward")

    out_len = conv1d_output_length(length, width, stride)
    windows = np.lib.stride_tricks.sliding_window_view(x.data, width, axis=2)[:, :, ::stride, :]
    out = np.einsum("bclk,fck->bfl", windows, kernels.data) + bias.data[None, :, None]

    def backward(g: np.ndarray) -> None:
        kernels.accumulate(np.einsum("bfl,bclk->fck", g, windows))
        bias.accumulate(g.sum(axis=(0, 2)))
        if x.requires_grad:
            dx = np.zeros_like(x.data)
            span = stride * (out_len - 1) + 1
            for j in range(width):
                dx[:, :, j : j + span : stride] += np.einsum("bfl,fc->bcl", g, kernels.data[:, :, j])
            x.accumulate(dx)

    return _result(out, (x, kernels, bias), backward, "conv1d")


def timestep(x: Tensor, t: int) -> Tensor:
    """Slice x[:, :, t] from a (batch, C, L) tensor."""
    shape = x.data.shape

    def backward(g: np.ndarray) -> None:
        full = np.zeros(shape, dtype=np.float64)
        full[:, :, t] = g
        x.accumulate(full)

    return _result(x.data[:, :, t], (x,), backward, "timestep")


def dropout(x: Tensor, rate: float, rng: np.random.Generator | None) -> Tensor:
    """Inverted dropout; identity when rate is 0 or no generator is given."""
    if rate <= 0.0 or rng is None:
        return x
    keep = (rng.random(x.data.shape) >= rate) / (1.0 - rate)
    return x * as_tensor(keep)
