"""The ensemble classifier and its three combiners."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from core import EnsembleError, MissingMeta
from geo import FeatureSegment, stack_segments
from nn import ModelSpec, ParamSet, predict_proba

from .stacking import base_probabilities, meta_spec
from .voting import majority_vote_labels, soft_average, soft_average_labels, unanimous_labels


class Combiner(str, Enum):
    STACKED_MLP = "stacked_mlp"
    SOFT_AVERAGE = "soft_average"
    MAJORITY_VOTE = "majority_vote"


Segments = Sequence[FeatureSegment] | np.ndarray


def _as_x(segments: Segments) -> np.ndarray:
    return segments if isinstance(segments, np.ndarray) else stack_segments(list(segments))[0]


@dataclass
class EnsembleModel:
    combiner: Combiner
    specs: Mapping[str, ModelSpec]
    globals: Mapping[str, ParamSet]
    meta: ParamSet | None = None
    meta_hidden_size: int = 64
    _meta_spec: ModelSpec | None = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.combiner = Combiner(self.combiner)
        if self.combiner is Combiner.STACKED_MLP and self.meta is None:
            raise MissingMeta("stacked_mlp needs a trained meta-learner", operation="EnsembleModel")
        if self.combiner is not Combiner.STACKED_MLP and self.meta is not None:
            raise EnsembleError(f"{self.combiner.value} does not use a meta-learner", operation="EnsembleModel")

    @property
    def n_classes(self) -> int:
        return next(iter(self.specs.values())).n_classes

    @property
    def meta_spec(self) -> ModelSpec:
        if self._meta_spec is None:
            self._meta_spec = meta_spec(self.n_classes, self.meta_hidden_size)
        return self._meta_spec

    def predict(self, segments: Segments) -> np.ndarray:
        if self.combiner is Combiner.STACKED_MLP:
            return predict_stacked(self, segments)
        if self.combiner is Combiner.SOFT_AVERAGE:
            return predict_soft_average(self.globals, self.specs, segments)
        return predict_majority_vote(self.globals, self.specs, segments)

    def predict_proba(self, segments: Segments) -> np.ndarray:
        """Class probabilities; majority voting has none."""
        probs = base_probabilities(self.globals, self.specs, _as_x(segments))
        if self.combiner is Combiner.SOFT_AVERAGE:
            return soft_average(probs)
        if self.combiner is Combiner.STACKED_MLP:
            return predict_proba(self.meta, self.meta_spec, np.concatenate(probs, axis=1))
        raise EnsembleError("majority vote produces labels only", operation="predict_proba")


def predict_stacked(model: EnsembleModel, segments: Segments) -> np.ndarray:
    """Meta-learner argmax over stacked base probabilities; unanimous base labels always win."""
    if model.meta is None:
        raise MissingMeta("no meta-learner on this ensemble", operation="predict_stacked")
    probs = base_probabilities(model.globals, model.specs, _as_x(segments))
    meta_probs = predict_proba(model.meta, model.meta_spec, np.concatenate(probs, axis=1))
    labels = np.argmax(meta_probs, axis=1)
    agreed = unanimous_labels(probs)
    return np.where(agreed >= 0, agreed, labels)


def predict_soft_average(
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    segments: Segments,
) -> np.ndarray:
    return soft_average_labels(base_probabilities(globals_, specs, _as_x(segments)))


def predict_majority_vote(
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    segments: Segments,
) -> np.ndarray:
    return majority_vote_labels(base_probabilities(globals_, specs, _as_x(segments)))
