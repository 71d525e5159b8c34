"""On-disk layout of a run's output directory."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

FINAL_DIR = "final"
META_NAME = "meta"


@dataclass(frozen=True)
class RunLayout:
    root: Path

    @classmethod
    def at(cls, root: str | Path) -> RunLayout:
        return cls(Path(root))

    @property
    def metrics_csv(self) -> Path:
        return self.root / "metrics.csv"

    @property
    def centralized_csv(self) -> Path:
        return self.root / "centralized.csv"

    @property
    def config_echo(self) -> Path:
        return self.root / "config.echo.json"

    @property
    def summary(self) -> Path:
        return self.root / "summary.json"

    @property
    def trips_csv(self) -> Path:
        return self.root / "trips.csv"

    @property
    def checkpoints(self) -> Path:
        return self.root / "checkpoints"

    def round_dir(self, round_index: int) -> Path:
        return self.checkpoints / f"round_{round_index:03d}"

    @property
    def final_dir(self) -> Path:
        return self.checkpoints / FINAL_DIR

    def ensure(self) -> RunLayout:
        self.root.mkdir(parents=True, exist_ok=True)
        return self


def checkpoint_path(directory: Path, name: str) -> Path:
    return directory / f"{name}.ckpt"


def pipeline_path(directory: Path) -> Path:
    return directory / "pipeline.json"
