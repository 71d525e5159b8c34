"""Chief-side operations.

Nothing here accepts worker data: the chief sees worker ids, parameter sets
and sample counts only.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from core import EmptyUpdateList, LayoutMismatch
from geo import FeatureSegment
from nn import AdamState, ModelSpec, ParamSet, adam_step, evaluate_model
from utils import derive_seed

from .state import ArchitectureAssignment, FederationConfig, FederationState, LocalUpdate

_SELECTION_STREAM = 0x5E1EC7


def select_workers(state: FederationState, config: FederationConfig, rng_seed: int) -> list[int]:
    """ceil(client_fraction * n_workers) distinct ids, ascending, fixed per (round, seed)."""
    n = config.n_workers
    count = min(n, math.ceil(config.client_fraction * n - 1e-9))
    if count >= n:
        return list(range(n))
    rng = np.random.default_rng(derive_seed(rng_seed, _SELECTION_STREAM, state.round))
    return sorted(int(i) for i in rng.choice(n, size=count, replace=False))


def architecture_groups(config: FederationConfig) -> dict[str, tuple[int, ...]]:
    """Workers allowed to train each architecture."""
    everyone = tuple(range(config.n_workers))
    if config.architecture_assignment is ArchitectureAssignment.REPLICATED:
        return {arch: everyone for arch in config.base_architectures}
    chunks = np.array_split(np.arange(config.n_workers), len(config.base_architectures))
    return {arch: tuple(int(w) for w in chunk) for arch, chunk in zip(config.base_architectures, chunks)}


def broadcast(global_params: ParamSet, workers: Sequence[int]) -> dict[int, ParamSet]:
    """An independent copy of the global model for every selected worker."""
    return {worker_id: global_params.copy() for worker_id in workers}


def fedavg_aggregate(updates: Sequence[LocalUpdate]) -> ParamSet:
    """Sample-weighted coordinate mean, summed in ascending worker-id order."""
    if not updates:
        raise EmptyUpdateList("no local updates to aggregate", operation="fedavg_aggregate")
    ordered = sorted(updates, key=lambda u: u.worker_id)
    reference = ordered[0].params
    for update in ordered[1:]:
        if update.params.layout() != reference.layout():
            raise LayoutMismatch(f"worker {update.worker_id} sent a different layout",
                                 operation="fedavg_aggregate")
    if len(ordered) == 1:
        return reference.copy()

    total = sum(u.n_samples for u in ordered)
    if total <= 0:
        raise EmptyUpdateList("updates carry no samples", operation="fedavg_aggregate")
    weights = [u.n_samples / total for u in ordered]
    averaged = []
    for name, _ in reference.layout():
        acc = np.zeros_like(reference[name])
        for weight, update in zip(weights, ordered):
            acc += weight * update.params[name]
        averaged.append((name, acc))
    return ParamSet(averaged)


def server_apply(
    global_params: ParamSet,
    aggregate: ParamSet,
    chief_state: AdamState,
    chief_lr: float,
) -> tuple[ParamSet, AdamState]:
    """Treat (global - aggregate) as a gradient and take one chief Adam step."""
    if global_params.layout() != aggregate.layout():
        raise LayoutMismatch("aggregate layout differs from the global model", operation="server_apply")
    pseudo_grad = {name: global_params[name] - aggregate[name] for name in global_params}
    chief_state.lr = chief_lr
    return adam_step(global_params, pseudo_grad, chief_state)


def evaluate_global(params: ParamSet, spec: ModelSpec, test: Sequence[FeatureSegment]) -> tuple[float, float]:
    """(accuracy, loss) of a global model on the chief-held test split."""
    return evaluate_model(params, spec, test)
