"""Stacked base-model probabilities and the MLP meta-learner trained on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from core import EmptyDataset, ShapeMismatch
from geo import FeatureSegment, stack_segments
from nn import Architecture, ModelSpec, ParamSet, build_model, predict_proba, train_local

logger = logging.getLogger(__name__)

ENSEMBLE_ORDER: tuple[str, ...] = ("LSTM", "GRU", "CNN1D")
META_EPOCHS = 200
META_BATCH = 30


@dataclass(frozen=True)
class StackedFeatures:
    """n x 3K matrix of [p_LSTM | p_GRU | p_CNN1D] rows with aligned labels."""

    features: np.ndarray
    labels: np.ndarray
    n_classes: int

    def __len__(self) -> int:
        return int(self.features.shape[0])

    def block(self, index: int) -> np.ndarray:
        k = self.n_classes
        return self.features[:, index * k : (index + 1) * k]


def meta_spec(n_classes: int, hidden_size: int = 64, n_base: int = len(ENSEMBLE_ORDER)) -> ModelSpec:
    """MLP over the concatenated probability vectors, fed as a length-1 sequence."""
    return ModelSpec(
        architecture=Architecture.MLP,
        channels=n_base * n_classes,
        seq_len=1,
        hidden_size=hidden_size,
        n_classes=n_classes,
    )


def base_probabilities(
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    segments: Sequence[FeatureSegment] | np.ndarray,
) -> list[np.ndarray]:
    """One (n x K) probability matrix per base model, in ensemble order."""
    missing = [arch for arch in ENSEMBLE_ORDER if arch not in globals_ or arch not in specs]
    if missing:
        raise ShapeMismatch(f"ensemble needs global models for {missing}", operation="collect_base_predictions")
    n_classes = {specs[arch].n_classes for arch in ENSEMBLE_ORDER}
    if len(n_classes) != 1:
        raise ShapeMismatch("base models disagree on the number of classes", operation="collect_base_predictions")
    x = segments if isinstance(segments, np.ndarray) else stack_segments(list(segments))[0]
    return [predict_proba(globals_[arch], specs[arch], x) for arch in ENSEMBLE_ORDER]


def collect_base_predictions(
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    segments: Sequence[FeatureSegment],
) -> StackedFeatures:
    probs = base_probabilities(globals_, specs, segments)
    labels = np.array([s.label.index for s in segments], dtype=np.int64)
    return StackedFeatures(
        features=np.concatenate(probs, axis=1),
        labels=labels,
        n_classes=probs[0].shape[1],
    )


def train_meta_learner(
    stacked: StackedFeatures,
    epochs: int,
    lr: float,
    rng_seed: int,
    *,
    hidden_size: int = 64,
    batch_size: int = META_BATCH,
) -> ParamSet:
    """Adam-trained MLP meta-learner; epochs=0 returns the seeded initialization."""
    if len(stacked) == 0:
        raise EmptyDataset("no stacked rows to train the meta-learner on", operation="train_meta_learner")
    spec = meta_spec(stacked.n_classes, hidden_size)
    meta = build_model(spec, rng_seed)
    meta, n = train_local(
        meta,
        spec,
        (stacked.features, stacked.labels),
        epochs=epochs,
        batch_size=batch_size,
        lr=lr,
        rng_seed=rng_seed,
    )
    logger.info("Meta-learner trained for %d epochs on %d proxy rows", epochs, n)
    return meta
