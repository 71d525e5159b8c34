"""Proxy/train/test splitting and non-IID worker sharding."""

from __future__ import annotations

import contextlib
import logging
import threading
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from core import InfeasiblePartition, TooFewSegments
from geo import FeatureSegment
from utils import split_counts

logger = logging.getLogger(__name__)

MIN_SEGMENTS_TO_SPLIT = 20
PROXY_FRACTION = 0.05
TRAIN_FRACTION = 0.8

_active_worker: ContextVar[int | None] = ContextVar("active_worker", default=None)


class LocalityAudit:
    """Counts reads of worker-owned segments made outside that worker's scope."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self.foreign_reads = 0

    def record(self, owner: int) -> None:
        if _active_worker.get() == owner:
            return
        with self._lock:
            self.foreign_reads += 1
        logger.warning("Segments of worker %d read outside its local scope", owner)

    def reset(self) -> None:
        with self._lock:
            self.foreign_reads = 0


locality_audit = LocalityAudit()


@contextlib.contextmanager
def worker_scope(worker_id: int) -> Iterator[None]:
    """Mark the current context as executing on behalf of one worker."""
    token = _active_worker.set(worker_id)
    try:
        yield
    finally:
        _active_worker.reset(token)


@dataclass(frozen=True)
class DatasetSplit:
    proxy: list[FeatureSegment]
    train: list[FeatureSegment]
    test: list[FeatureSegment]


class WorkerDataset:
    """Local data D_n of one worker; reads are audited against worker_scope."""

    def __init__(self, worker_id: int, segments: Sequence[FeatureSegment]) -> None:
        if not segments:
            raise InfeasiblePartition(f"worker {worker_id} would hold no data", operation="partition_non_iid")
        self.worker_id = worker_id
        self._segments = tuple(segments)
        self._labels = frozenset(s.label.index for s in self._segments)

    def __len__(self) -> int:
        return len(self._segments)

    def __repr__(self) -> str:
        return f"WorkerDataset(worker_id={self.worker_id}, n={len(self)}, labels={sorted(self._labels)})"

    @property
    def labels(self) -> frozenset[int]:
        return self._labels

    @property
    def segments(self) -> tuple[FeatureSegment, ...]:
        locality_audit.record(self.worker_id)
        return self._segments


def _stratified_order(segments: Sequence[FeatureSegment], rng: np.random.Generator) -> list[int]:
    by_class: dict[int, list[int]] = {}
    for i, seg in enumerate(segments):
        by_class.setdefault(seg.label.index, []).append(i)
    queues = [list(rng.permutation(idx)) for _, idx in sorted(by_class.items())]
    order: list[int] = []
    depth = max(len(q) for q in queues)
    for level in range(depth):
        for c in rng.permutation(len(queues)):
            if level < len(queues[c]):
                order.append(int(queues[c][level]))
    return order


def split_dataset(
    segments: Sequence[FeatureSegment],
    rng_seed: int,
    *,
    proxy_fraction: float = PROXY_FRACTION,
    train_fraction: float = TRAIN_FRACTION,
) -> DatasetSplit:
    """Stratified shuffle, then floor(5%) proxy and floor(80%) of the rest to train."""
    n = len(segments)
    if n < MIN_SEGMENTS_TO_SPLIT:
        raise TooFewSegments(f"{n} segments; at least {MIN_SEGMENTS_TO_SPLIT} required", operation="split_dataset")
    n_proxy, n_train, _ = split_counts(n, proxy_fraction, train_fraction)
    order = _stratified_order(segments, np.random.default_rng(rng_seed))
    picked = [segments[i] for i in order]
    split = DatasetSplit(
        proxy=picked[:n_proxy],
        train=picked[n_proxy : n_proxy + n_train],
        test=picked[n_proxy + n_train :],
    )
    logger.info("Split %d segments: proxy=%d train=%d test=%d", n, len(split.proxy), len(split.train), len(split.test))
    return split


def assign_labels(n_workers: int, modes_per_worker: int, n_classes: int) -> list[list[int]]:
    """Overlapping round-robin label sets: worker w holds labels (s_w + j) mod K for j < m.

    s_w is w mod K when there are at least K workers, otherwise the starts are
    spread evenly over the K labels. Neighbouring workers share labels whenever
    m > 1, and the starts are never more than m apart, so every label is held.
    """
    def start(w: int) -> int:
        return w % n_classes if n_workers >= n_classes else (w * n_classes) // n_workers

    return [[(start(w) + j) % n_classes for j in range(modes_per_worker)] for w in range(n_workers)]


def partition_non_iid(
    train: Sequence[FeatureSegment],
    n_workers: int = 10,
    modes_per_worker: int = 2,
    rng_seed: int = 0,
    *,
    n_classes: int | None = None,
) -> list[WorkerDataset]:
    """Label-restricted shards; the union of worker data equals train exactly."""
    if n_workers < 1:
        raise InfeasiblePartition("n_workers must be at least 1", operation="partition_non_iid")
    if n_classes is None:
        n_classes = max(s.label.index for s in train) + 1 if train else 0
    if not 1 <= modes_per_worker <= n_classes:
        raise InfeasiblePartition(
            f"modes_per_worker={modes_per_worker} must be in [1, {n_classes}]", operation="partition_non_iid"
        )
    if n_workers * modes_per_worker < n_classes:
        raise InfeasiblePartition(
            f"{n_workers} workers x {modes_per_worker} modes cannot cover {n_classes} labels",
            operation="partition_non_iid",
        )

    label_sets = assign_labels(n_workers, modes_per_worker, n_classes)
    holders: dict[int, list[int]] = {c: [] for c in range(n_classes)}
    for w, labels in enumerate(label_sets):
        for c in labels:
            holders[c].append(w)

    by_class: dict[int, list[FeatureSegment]] = {c: [] for c in range(n_classes)}
    for seg in train:
        by_class[seg.label.index].append(seg)

    rng = np.random.default_rng(rng_seed)
    shards: dict[int, list[FeatureSegment]] = {w: [] for w in range(n_workers)}
    for c in range(n_classes):
        members, owners = by_class[c], holders[c]
        if len(members) < len(owners):
            raise InfeasiblePartition(
                f"label {c} has {len(members)} segments for {len(owners)} workers",
                operation="partition_non_iid",
            )
        order = rng.permutation(len(members))
        for owner, chunk in zip(owners, np.array_split(order, len(owners))):
            shards[owner].extend(members[i] for i in chunk)

    workers = [WorkerDataset(w, shards[w]) for w in range(n_workers)]
    for worker in workers:
        logger.debug("Partitioned %r", worker)
    return workers
