"""Federation configuration, chief-side state and per-round metrics."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from nn import BASE_ARCHITECTURES, AdamState, ParamSet


class Aggregation(str, Enum):
    PLAIN_FEDAVG = "plain_fedavg"
    SERVER_ADAM = "server_adam"


class ArchitectureAssignment(str, Enum):
    REPLICATED = "replicated"
    PARTITIONED = "partitioned"


@dataclass(frozen=True)
class FederationConfig:
    n_workers: int = 10
    rounds: int = 20
    local_epochs: int = 10
    local_batch: int = 30
    worker_lr: float = 0.0005
    chief_lr: float = 0.001
    aggregation: Aggregation = Aggregation.PLAIN_FEDAVG
    architecture_assignment: ArchitectureAssignment = ArchitectureAssignment.REPLICATED
    client_fraction: float = 1.0
    pretrain_on_proxy: bool = True
    pretrain_epochs: int = 1
    max_parallel_workers: int = 1
    base_architectures: tuple[str, ...] = tuple(a.value for a in BASE_ARCHITECTURES)

    def __post_init__(self) -> None:
        object.__setattr__(self, "aggregation", Aggregation(self.aggregation))
        object.__setattr__(self, "architecture_assignment", ArchitectureAssignment(self.architecture_assignment))
        object.__setattr__(self, "base_architectures", tuple(self.base_architectures))

    def problems(self) -> list[tuple[str, str]]:
        """(field, reason) pairs for every violated invariant."""
        issues: list[tuple[str, str]] = []
        if self.n_workers < 1:
            issues.append(("n_workers", "must be at least 1"))
        if self.rounds < 1:
            issues.append(("rounds", "must be at least 1"))
        if self.local_epochs < 0:
            issues.append(("local_epochs", "must be non-negative"))
        if self.local_batch < 1:
            issues.append(("local_batch", "must be at least 1"))
        if self.worker_lr < 0:
            issues.append(("worker_lr", "must be non-negative"))
        if self.chief_lr < 0:
            issues.append(("chief_lr", "must be non-negative"))
        if not 0.0 < self.client_fraction <= 1.0:
            issues.append(("client_fraction", "must be in (0, 1]"))
        if self.pretrain_epochs < 0:
            issues.append(("pretrain_epochs", "must be non-negative"))
        if self.max_parallel_workers < 1:
            issues.append(("max_parallel_workers", "must be at least 1"))
        if not self.base_architectures:
            issues.append(("base_architectures", "must name at least one architecture"))
        if (
            self.architecture_assignment is ArchitectureAssignment.PARTITIONED
            and self.n_workers < len(self.base_architectures)
        ):
            issues.append(("architecture_assignment", "partitioned mode needs a worker per architecture"))
        return issues


@dataclass(frozen=True)
class LocalUpdate:
    worker_id: int
    params: ParamSet
    n_samples: int


@dataclass
class RoundMetrics:
    round: int
    accuracy: dict[str, float] = field(default_factory=dict)
    loss: dict[str, float | None] = field(default_factory=dict)
    participants: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def record(self, model: str, accuracy: float, loss: float | None, participants: tuple[int, ...]) -> None:
        self.accuracy[model] = accuracy
        self.loss[model] = loss
        self.participants[model] = participants


@dataclass
class FederationState:
    globals: dict[str, ParamSet]
    chief_adam: dict[str, AdamState] = field(default_factory=dict)
    round: int = 0
    history: list[RoundMetrics] = field(default_factory=list)
