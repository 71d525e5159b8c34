"""Federated averaging simulation: chief and worker roles in one process."""

from .chief import (
    architecture_groups,
    broadcast,
    evaluate_global,
    fedavg_aggregate,
    select_workers,
    server_apply,
)
from .simulation import initialize_globals, run_federation, validate_federation_config
from .state import (
    Aggregation,
    ArchitectureAssignment,
    FederationConfig,
    FederationState,
    LocalUpdate,
    RoundMetrics,
)
from .worker import local_round, local_seed

__all__ = [
    "Aggregation",
    "ArchitectureAssignment",
    "FederationConfig",
    "FederationState",
    "LocalUpdate",
    "RoundMetrics",
    "architecture_groups",
    "broadcast",
    "evaluate_global",
    "fedavg_aggregate",
    "initialize_globals",
    "local_round",
    "local_seed",
    "run_federation",
    "select_workers",
    "server_apply",
    "validate_federation_config",
]
