"""Combining the federated base learners into one classifier."""

from .combiners import (
    Combiner,
    EnsembleModel,
    predict_majority_vote,
    predict_soft_average,
    predict_stacked,
)
from .evaluation import ROW_NAMES, EnsembleScore, build_ensembles, evaluate_accuracy, evaluate_ensembles
from .stacking import (
    ENSEMBLE_ORDER,
    META_EPOCHS,
    StackedFeatures,
    base_probabilities,
    collect_base_predictions,
    meta_spec,
    train_meta_learner,
)
from .voting import majority_vote_labels, soft_average, soft_average_labels

__all__ = [
    "ENSEMBLE_ORDER",
    "META_EPOCHS",
    "ROW_NAMES",
    "Combiner",
    "EnsembleModel",
    "EnsembleScore",
    "StackedFeatures",
    "base_probabilities",
    "build_ensembles",
    "collect_base_predictions",
    "evaluate_accuracy",
    "evaluate_ensembles",
    "majority_vote_labels",
    "meta_spec",
    "predict_majority_vote",
    "predict_soft_average",
    "predict_stacked",
    "soft_average",
    "soft_average_labels",
    "train_meta_learner",
]
