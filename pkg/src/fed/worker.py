"""Worker-side local training."""

from __future__ import annotations

import logging
import time

from nn import ModelSpec, ParamSet, train_local
from observability import observe_local_train_duration
from synth import WorkerDataset, worker_scope
from utils import derive_seed

from .state import FederationConfig, LocalUpdate

logger = logging.getLogger(__name__)

_LOCAL_STREAM = 0x10CA1


def local_seed(rng_seed: int, round_index: int, worker_id: int, arch_index: int) -> int:
    """Shuffle seed for one worker's training of one architecture in one round."""
    return derive_seed(rng_seed, _LOCAL_STREAM, round_index, worker_id, arch_index)


def local_round(
    worker: WorkerDataset,
    params: ParamSet,
    spec: ModelSpec,
    config: FederationConfig,
    rng_seed: int,
) -> tuple[ParamSet, int]:
    """E epochs of Adam on the worker's own segments, starting from the broadcast copy."""
    started = time.perf_counter()
    with worker_scope(worker.worker_id):
        updated, n_samples = train_local(
            params,
            spec,
            worker.segments,
            epochs=config.local_epochs,
            batch_size=config.local_batch,
            lr=config.worker_lr,
            rng_seed=rng_seed,
        )
    elapsed = time.perf_counter() - started
    observe_local_train_duration(spec.architecture.value, elapsed)
    logger.debug("worker %d trained %s on %d samples in %.2fs",
                 worker.worker_id, spec.architecture.value, n_samples, elapsed)
    return updated, n_samples


def run_local_update(
    worker: WorkerDataset,
    params: ParamSet,
    spec: ModelSpec,
    config: FederationConfig,
    rng_seed: int,
) -> LocalUpdate:
    updated, n_samples = local_round(worker, params, spec, config, rng_seed)
    return LocalUpdate(worker_id=worker.worker_id, params=updated, n_samples=n_samples)
