"""Synchronous federated rounds over the three base architectures."""

from __future__ import annotations

import asyncio
import logging
import time
from typing import Callable, Mapping, Sequence

from core import InvalidConfigValue, InvalidSpec
from nn import AdamState, ModelSpec, ParamSet, build_model, train_local
from observability import count_local_update, count_round, observe_round_duration, set_test_accuracy
from synth import DatasetSplit, WorkerDataset
from utils import derive_seed

from .chief import (
    architecture_groups,
    broadcast,
    evaluate_global,
    fedavg_aggregate,
    select_workers,
    server_apply,
)
from .state import Aggregation, FederationConfig, FederationState, LocalUpdate, RoundMetrics
from .worker import local_seed, run_local_update

logger = logging.getLogger(__name__)

RoundCallback = Callable[[FederationState, RoundMetrics], None]

_INIT_STREAM = 0x1417
_PRETRAIN_STREAM = 0x9E7

# (architecture, worker, broadcast copy, local seed)
_Job = tuple[str, WorkerDataset, ParamSet, int]


def validate_federation_config(config: FederationConfig) -> None:
    problems = config.problems()
    if problems:
        key, reason = problems[0]
        raise InvalidConfigValue(f"federation.{key}", reason)


def initialize_globals(
    specs: Mapping[str, ModelSpec],
    config: FederationConfig,
    rng_seed: int,
    *,
    proxy: Sequence | None = None,
) -> dict[str, ParamSet]:
    """Seeded initial global models, optionally pre-trained on the public proxy set."""
    globals_: dict[str, ParamSet] = {}
    for index, arch in enumerate(config.base_architectures):
        spec = specs[arch]
        params = build_model(spec, derive_seed(rng_seed, _INIT_STREAM, index))
        if config.pretrain_on_proxy and config.pretrain_epochs > 0 and proxy:
            params, n = train_local(
                params,
                spec,
                proxy,
                epochs=config.pretrain_epochs,
                batch_size=config.local_batch,
                lr=config.chief_lr,
                rng_seed=derive_seed(rng_seed, _PRETRAIN_STREAM, index),
            )
            logger.info("Pre-trained %s on %d proxy segments", arch, n)
        globals_[arch] = params
    return globals_


async def _train_parallel(jobs: list[_Job], specs: Mapping[str, ModelSpec],
                          config: FederationConfig) -> list[LocalUpdate]:
    limit = asyncio.Semaphore(config.max_parallel_workers)

    async def run(job: _Job) -> LocalUpdate:
        arch, worker, params, seed = job
        async with limit:
            return await asyncio.to_thread(run_local_update, worker, params, specs[arch], config, seed)

    return list(await asyncio.gather(*(run(job) for job in jobs)))


def _train_jobs(jobs: list[_Job], specs: Mapping[str, ModelSpec], config: FederationConfig) -> list[LocalUpdate]:
    if config.max_parallel_workers <= 1 or len(jobs) <= 1:
        return [run_local_update(w, p, specs[arch], config, seed) for arch, w, p, seed in jobs]
    return asyncio.run(_train_parallel(jobs, specs, config))


def _check_specs(specs: Mapping[str, ModelSpec], config: FederationConfig) -> None:
    missing = [arch for arch in config.base_architectures if arch not in specs]
    if missing:
        raise InvalidSpec(f"no model spec for {missing}", operation="run_federation")


def run_federation(
    config: FederationConfig,
    workers: Sequence[WorkerDataset],
    specs: Mapping[str, ModelSpec],
    splits: DatasetSplit,
    rng_seed: int,
    *,
    initial_globals: Mapping[str, ParamSet] | None = None,
    on_round: RoundCallback | None = None,
) -> FederationState:
    """T rounds of select, broadcast, local training, aggregation and test evaluation."""
    validate_federation_config(config)
    _check_specs(specs, config)
    if len(workers) != config.n_workers:
        raise InvalidConfigValue("federation.n_workers", f"{len(workers)} worker datasets supplied")

    if initial_globals is None:
        initial_globals = initialize_globals(specs, config, rng_seed, proxy=splits.proxy)
    state = FederationState(globals={arch: initial_globals[arch].copy() for arch in config.base_architectures})
    if config.aggregation is Aggregation.SERVER_ADAM:
        state.chief_adam = {arch: AdamState(lr=config.chief_lr) for arch in config.base_architectures}

    by_id = {w.worker_id: w for w in workers}
    groups = architecture_groups(config)

    for round_index in range(1, config.rounds + 1):
        started = time.perf_counter()
        state.round = round_index
        selected = select_workers(state, config, rng_seed)

        participants: dict[str, tuple[int, ...]] = {}
        jobs: list[_Job] = []
        for arch_index, arch in enumerate(config.base_architectures):
            allowed = set(groups[arch])
            chosen = tuple(w for w in selected if w in allowed)
            participants[arch] = chosen
            for worker_id, copy in broadcast(state.globals[arch], chosen).items():
                seed = local_seed(rng_seed, round_index, worker_id, arch_index)
                jobs.append((arch, by_id[worker_id], copy, seed))

        updates = _train_jobs(jobs, specs, config)
        per_arch: dict[str, list[LocalUpdate]] = {arch: [] for arch in config.base_architectures}
        for (arch, _, _, _), update in zip(jobs, updates):
            per_arch[arch].append(update)
            count_local_update(arch)

        metrics = RoundMetrics(round=round_index)
        for arch in config.base_architectures:
            current = state.globals[arch]
            if per_arch[arch]:
                aggregate = fedavg_aggregate(per_arch[arch])
                if config.aggregation is Aggregation.SERVER_ADAM:
                    aggregate, _ = server_apply(current, aggregate, state.chief_adam[arch], config.chief_lr)
                current.check_layout(aggregate, operation="run_federation")
                state.globals[arch] = aggregate
            else:
                logger.info("Round %d: no %s workers selected, global kept", round_index, arch)

            accuracy, loss = evaluate_global(state.globals[arch], specs[arch], splits.test)
            metrics.record(arch, accuracy, loss, participants[arch])
            count_round(arch)
            set_test_accuracy(arch, accuracy)

        state.history.append(metrics)
        elapsed = time.perf_counter() - started
        observe_round_duration(elapsed)
        logger.info(
            "Round %d/%d done in %.1fs: %s",
            round_index,
            config.rounds,
            elapsed,
            " ".join(f"{arch}={metrics.accuracy[arch]:.4f}" for arch in config.base_architectures),
        )
        if on_round is not None:
            on_round(state, metrics)
    return state
