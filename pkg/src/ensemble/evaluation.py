"""Accuracy scoring for ensemble predictions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from core import EmptyEvaluation, LengthMismatch
from geo import FeatureSegment
from nn import ModelSpec, ParamSet
from nn.ops import PROB_FLOOR

from .combiners import Combiner, EnsembleModel

ROW_NAMES: dict[Combiner, str] = {
    Combiner.STACKED_MLP: "efeddnn_stacked",
    Combiner.SOFT_AVERAGE: "efeddnn_softavg",
    Combiner.MAJORITY_VOTE: "efeddnn_vote",
}


@dataclass(frozen=True)
class EnsembleScore:
    name: str
    accuracy: float
    loss: float | None


def evaluate_accuracy(predicted: Sequence[int] | np.ndarray, labels: Sequence[int] | np.ndarray) -> float:
    predicted = np.asarray(predicted)
    labels = np.asarray(labels)
    if predicted.shape != labels.shape:
        raise LengthMismatch(f"{predicted.shape[0]} predictions for {labels.shape[0]} labels",
                             operation="evaluate_accuracy")
    if labels.size == 0:
        raise EmptyEvaluation("nothing to score", operation="evaluate_accuracy")
    return float(np.mean(predicted == labels))


def build_ensembles(
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    meta: ParamSet | None,
    *,
    meta_hidden_size: int = 64,
) -> dict[Combiner, EnsembleModel]:
    """Every combiner the available parts allow; stacking needs a meta-learner."""
    ensembles = {
        Combiner.SOFT_AVERAGE: EnsembleModel(Combiner.SOFT_AVERAGE, specs, globals_),
        Combiner.MAJORITY_VOTE: EnsembleModel(Combiner.MAJORITY_VOTE, specs, globals_),
    }
    if meta is not None:
        ensembles[Combiner.STACKED_MLP] = EnsembleModel(
            Combiner.STACKED_MLP, specs, globals_, meta=meta, meta_hidden_size=meta_hidden_size
        )
    return {c: ensembles[c] for c in Combiner if c in ensembles}


def evaluate_ensembles(
    ensembles: Mapping[Combiner, EnsembleModel],
    test: Sequence[FeatureSegment],
) -> list[EnsembleScore]:
    """Accuracy and, where probabilities exist, mean cross-entropy per combiner."""
    labels = np.array([s.label.index for s in test], dtype=np.int64)
    scores: list[EnsembleScore] = []
    for combiner in Combiner:
        model = ensembles.get(combiner)
        if model is None:
            continue
        accuracy = evaluate_accuracy(model.predict(test), labels)
        loss = None
        if combiner is not Combiner.MAJORITY_VOTE:
            probs = model.predict_proba(test)
            loss = float(-np.mean(np.log(np.maximum(probs[np.arange(len(labels)), labels], PROB_FLOOR))))
        scores.append(EnsembleScore(ROW_NAMES[combiner], accuracy, loss))
    return scores
