"""Trips to normalized, split and partitioned segments."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from config import ExperimentConfig
from geo import FeatureSegment, Normalizer, Trip, apply_normalizer, fit_normalizer, trips_to_segments
from synth import DatasetSplit, WorkerDataset, generate_dataset, partition_non_iid, split_dataset
from utils import derive_seed

logger = logging.getLogger(__name__)

# Sub-seed streams derived from the master seed.
SPLIT_STREAM = 1
PARTITION_STREAM = 2
FEDERATION_STREAM = 3
META_STREAM = 4
CENTRALIZED_STREAM = 5


@dataclass(frozen=True)
class PreparedData:
    split: DatasetSplit
    workers: list[WorkerDataset]
    normalizer: Normalizer


def generate_trips(config: ExperimentConfig) -> list[Trip]:
    ds = config.dataset
    return generate_dataset(
        ds.trips_per_mode,
        ds.points_per_trip,
        config.seed,
        class_names=ds.class_names,
    )


def normalize_all(norm: Normalizer, segments: Sequence[FeatureSegment]) -> list[FeatureSegment]:
    return [apply_normalizer(norm, s) for s in segments]


def prepare_data(config: ExperimentConfig, trips: Sequence[Trip]) -> PreparedData:
    """Segment, split, fit normalization on train only, then shard train across workers."""
    ds = config.dataset
    segments = trips_to_segments(trips, length=ds.segment_length, channels=ds.channels)
    raw = split_dataset(
        segments,
        derive_seed(config.seed, SPLIT_STREAM),
        proxy_fraction=ds.proxy_fraction,
        train_fraction=ds.train_fraction,
    )
    norm = fit_normalizer(raw.train, channel_names=ds.channels)
    split = DatasetSplit(
        proxy=normalize_all(norm, raw.proxy),
        train=normalize_all(norm, raw.train),
        test=normalize_all(norm, raw.test),
    )
    workers = partition_non_iid(
        split.train,
        config.federation.n_workers,
        ds.modes_per_worker,
        derive_seed(config.seed, PARTITION_STREAM),
        n_classes=len(ds.class_names),
    )
    logger.info(
        "Prepared %d segments from %d trips for %d workers (sizes %s)",
        len(segments),
        len(trips),
        len(workers),
        [len(w) for w in workers],
    )
    return PreparedData(split=split, workers=workers, normalizer=norm)
