"""Centralized baseline: each base architecture trained on the pooled training split."""

from __future__ import annotations

import logging
from typing import Mapping

from config import ExperimentConfig
from nn import ModelSpec, ParamSet, evaluate_model, train_local
from store import CentralizedRow
from synth import DatasetSplit
from utils import derive_seed

from .pipeline import CENTRALIZED_STREAM

logger = logging.getLogger(__name__)


def centralized_epochs(config: ExperimentConfig) -> int:
    fed = config.federation
    return min(fed.rounds * fed.local_epochs, config.centralized_epochs)


def train_centralized(
    config: ExperimentConfig,
    split: DatasetSplit,
    specs: Mapping[str, ModelSpec],
    initial_globals: Mapping[str, ParamSet],
) -> list[CentralizedRow]:
    """Same starting weights as federation, same optimizer, all training data in one place."""
    epochs = centralized_epochs(config)
    rows: list[CentralizedRow] = []
    for index, arch in enumerate(config.federation.base_architectures):
        params, _ = train_local(
            initial_globals[arch],
            specs[arch],
            split.train,
            epochs=epochs,
            batch_size=config.federation.local_batch,
            lr=config.federation.worker_lr,
            rng_seed=derive_seed(config.seed, CENTRALIZED_STREAM, index),
        )
        accuracy, loss = evaluate_model(params, specs[arch], split.test)
        logger.info("Centralized %s: accuracy=%.4f loss=%.4f after %d epochs", arch, accuracy, loss, epochs)
        rows.append(CentralizedRow(arch, accuracy, loss, epochs))
    return rows
