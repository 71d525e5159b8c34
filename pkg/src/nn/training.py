"""Mini-batch Adam training and evaluation of a single model."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np

from core import EmptyDataset
from geo import FeatureSegment, stack_segments

from .models import ModelSpec, as_batch, leaves, model_logits, predict_proba
from .ops import PROB_FLOOR, one_hot, softmax_cross_entropy
from .optim import AdamState, adam_step
from .params import ParamSet

logger = logging.getLogger(__name__)

TrainingData = Sequence[FeatureSegment] | tuple[np.ndarray, np.ndarray]


def as_arrays(data: TrainingData, spec: ModelSpec) -> tuple[np.ndarray, np.ndarray]:
    """(X, y) from segments or from an (X, y) pair."""
    if isinstance(data, tuple) and len(data) == 2 and isinstance(data[0], np.ndarray):
        x, y = data
    else:
        x, y = stack_segments(list(data))
    if len(y) == 0:
        return np.zeros((0, spec.channels, spec.seq_len)), np.zeros(0, dtype=np.int64)
    return as_batch(x, spec), np.asarray(y, dtype=np.int64)


def loss_and_grads(
    params: ParamSet,
    spec: ModelSpec,
    x: np.ndarray,
    y: np.ndarray,
    *,
    rng: np.random.Generator | None = None,
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean cross-entropy on a batch and its gradient for every parameter."""
    tensors = leaves(params, requires_grad=True)
    loss = softmax_cross_entropy(model_logits(tensors, spec, x, rng=rng), one_hot(y, spec.n_classes))
    loss.backward()
    grads = {
        name: t.grad if t.grad is not None else np.zeros_like(t.data)
        for name, t in tensors.items()
    }
    return float(loss.data), grads


def train_local(
    params: ParamSet,
    spec: ModelSpec,
    data: TrainingData,
    epochs: int,
    batch_size: int,
    lr: float,
    rng_seed: int,
) -> tuple[ParamSet, int]:
    """Mini-batch Adam with a fresh optimizer state and seeded per-epoch shuffles.

    Returns the updated parameters and the number of samples trained on.
    """
    x, y = as_arrays(data, spec)
    n = len(y)
    if n == 0:
        raise EmptyDataset("no samples to train on", operation="train_local")
    if batch_size < 1:
        raise ValueError("batch_size must be at least 1")

    rng = np.random.default_rng(rng_seed)
    dropout_rng = rng if spec.dropout > 0 else None
    state = AdamState(lr=lr)
    current = params.copy()
    for epoch in range(epochs):
        order = rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, batch_size):
            idx = order[start : start + batch_size]
            loss, grads = loss_and_grads(current, spec, x[idx], y[idx], rng=dropout_rng)
            current, state = adam_step(current, grads, state)
            epoch_loss += loss * len(idx)
        logger.debug("%s epoch %d/%d loss=%.6f", spec.architecture.value, epoch + 1, epochs, epoch_loss / n)
    return current, n


def evaluate_model(params: ParamSet, spec: ModelSpec, data: TrainingData) -> tuple[float, float]:
    """(accuracy, mean cross-entropy) on a labeled set."""
    x, y = as_arrays(data, spec)
    if len(y) == 0:
        raise EmptyDataset("no samples to evaluate", operation="evaluate_model")
    probs = predict_proba(params, spec, x)
    accuracy = float(np.mean(np.argmax(probs, axis=1) == y))
    loss = float(-np.mean(np.log(np.maximum(probs[np.arange(len(y)), y], PROB_FLOOR))))
    return accuracy, loss
