"""CSV and JSON result files written by a run."""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

logger = logging.getLogger(__name__)

METRICS_COLUMNS = ("round", "architecture", "test_accuracy", "test_loss", "n_participants")
CENTRALIZED_COLUMNS = ("architecture", "test_accuracy", "test_loss", "epochs")


def format_float(value: float | None) -> str:
    return "" if value is None else f"{value:.6f}"


@dataclass(frozen=True)
class MetricsRow:
    round: int
    architecture: str
    test_accuracy: float
    test_loss: float | None
    n_participants: int

    def as_csv(self) -> list[str]:
        return [
            str(self.round),
            self.architecture,
            format_float(self.test_accuracy),
            format_float(self.test_loss),
            str(self.n_participants),
        ]


@dataclass(frozen=True)
class CentralizedRow:
    architecture: str
    test_accuracy: float
    test_loss: float
    epochs: int

    def as_csv(self) -> list[str]:
        return [self.architecture, format_float(self.test_accuracy), format_float(self.test_loss), str(self.epochs)]


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> int:
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    return count


def write_metrics_csv(path: str | Path, rows: Sequence[MetricsRow]) -> Path:
    """Rows are written in the order given; callers keep (round, model order)."""
    path = Path(path)
    n = _write_rows(path, METRICS_COLUMNS, (row.as_csv() for row in rows))
    logger.info("Wrote %d metric rows to %s", n, path)
    return path


def read_metrics_csv(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open(newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def write_centralized_csv(path: str | Path, rows: Sequence[CentralizedRow]) -> Path:
    path = Path(path)
    _write_rows(path, CENTRALIZED_COLUMNS, (row.as_csv() for row in rows))
    return path


def write_json(path: str | Path, payload: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))
