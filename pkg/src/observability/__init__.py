"""Observability utilities (metrics, logging)."""

from .logging import configure_logging
from .metrics import (
    count_error,
    count_local_update,
    count_round,
    observe_local_train_duration,
    observe_round_duration,
    set_test_accuracy,
    start_metrics_server,
)

__all__ = [
    "configure_logging",
    "count_error",
    "count_local_update",
    "count_round",
    "observe_local_train_duration",
    "observe_round_duration",
    "set_test_accuracy",
    "start_metrics_server",
]
