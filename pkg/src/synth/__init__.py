"""Synthetic trips and data partitioning standing in for a real travel survey."""

from .generator import generate_dataset, generate_trip, mode_label
from .kinematics import DEFAULT_KINEMATICS, ModeKinematics, kinematics_for
from .partition import (
    DatasetSplit,
    WorkerDataset,
    assign_labels,
    locality_audit,
    partition_non_iid,
    split_dataset,
    worker_scope,
)

__all__ = [
    "DEFAULT_KINEMATICS",
    "DatasetSplit",
    "ModeKinematics",
    "WorkerDataset",
    "assign_labels",
    "generate_dataset",
    "generate_trip",
    "kinematics_for",
    "locality_audit",
    "mode_label",
    "partition_non_iid",
    "split_dataset",
    "worker_scope",
]
