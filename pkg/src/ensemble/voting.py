"""Unweighted soft averaging and hard majority voting over base-model probabilities."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from core import ShapeMismatch


def _check_blocks(probs: Sequence[np.ndarray]) -> None:
    if not probs:
        raise ShapeMismatch("no base-model probabilities", operation="combine")
    shape = probs[0].shape
    if any(p.shape != shape for p in probs):
        raise ShapeMismatch(f"base-model outputs differ in shape: {[p.shape for p in probs]}", operation="combine")


def soft_average(probs: Sequence[np.ndarray]) -> np.ndarray:
    _check_blocks(probs)
    return np.mean(np.stack(probs), axis=0)


def soft_average_labels(probs: Sequence[np.ndarray]) -> np.ndarray:
    """argmax of the mean probability; np.argmax already picks the lowest tied index."""
    return np.argmax(soft_average(probs), axis=1)


def majority_vote_labels(probs: Sequence[np.ndarray]) -> np.ndarray:
    """Modal base-model label per row; rows without a strict mode fall back to soft average."""
    _check_blocks(probs)
    votes = np.stack([np.argmax(p, axis=1) for p in probs], axis=1)
    n_classes = probs[0].shape[1]
    fallback = soft_average_labels(probs)
    out = np.empty(votes.shape[0], dtype=np.int64)
    for i, row in enumerate(votes):
        counts = np.bincount(row, minlength=n_classes)
        top = counts.max()
        if np.count_nonzero(counts == top) == 1:
            out[i] = int(np.argmax(counts))
        else:
            out[i] = int(fallback[i])
    return out


def unanimous_labels(probs: Sequence[np.ndarray]) -> np.ndarray:
    """Label agreed on by every base model, or -1 where they disagree."""
    votes = np.stack([np.argmax(p, axis=1) for p in probs], axis=1)
    agree = np.all(votes == votes[:, :1], axis=1)
    return np.where(agree, votes[:, 0], -1)
