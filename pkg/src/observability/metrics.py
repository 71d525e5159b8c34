"""
Prometheus metrics helpers for fedmode training runs.

Exports a small HTTP server on FEDMODE_METRICS_PORT to be scraped by Prometheus.
"""

from __future__ import annotations

import threading

from prometheus_client import Counter, Gauge, Histogram, start_http_server

ROUND_COUNTER = Counter(
    "fedmode_rounds_total",
    "Communication rounds completed",
    ["architecture"],
)

LOCAL_UPDATE_COUNTER = Counter(
    "fedmode_local_updates_total",
    "Local worker updates received by the chief",
    ["architecture"],
)

ERROR_COUNTER = Counter(
    "fedmode_errors_total",
    "Errors surfaced to the CLI",
    ["source"],
)

TEST_ACCURACY_GAUGE = Gauge(
    "fedmode_test_accuracy",
    "Latest test accuracy per model",
    ["model"],
)

LOCAL_TRAIN_DURATION_HISTOGRAM = Histogram(
    "fedmode_local_train_duration_seconds",
    "Duration of one worker's local training in seconds",
    ["architecture"],
    buckets=(0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0),
)

ROUND_DURATION_HISTOGRAM = Histogram(
    "fedmode_round_duration_seconds",
    "Duration of one communication round in seconds",
    buckets=(0.5, 1.0, 2.5, 5.0, 10.0, 30.0, 60.0, 120.0, 300.0),
)

_server_started = False
_server_lock = threading.Lock()


def start_metrics_server(port: int) -> None:
    """Start the Prometheus HTTP metrics server once."""
    global _server_started
    with _server_lock:
        if _server_started or port <= 0:
            return
        start_http_server(port)
        _server_started = True


def count_round(architecture: str) -> None:
    ROUND_COUNTER.labels(architecture=architecture or "unknown").inc()


def count_local_update(architecture: str) -> None:
    LOCAL_UPDATE_COUNTER.labels(architecture=architecture or "unknown").inc()


def count_error(source: str) -> None:
    ERROR_COUNTER.labels(source=source or "unknown").inc()


def set_test_accuracy(model: str, accuracy: float) -> None:
    TEST_ACCURACY_GAUGE.labels(model=model or "unknown").set(accuracy)


def observe_local_train_duration(architecture: str, duration: float) -> None:
    LOCAL_TRAIN_DURATION_HISTOGRAM.labels(architecture=architecture or "unknown").observe(duration)


def observe_round_duration(duration: float) -> None:
    ROUND_DURATION_HISTOGRAM.observe(duration)
