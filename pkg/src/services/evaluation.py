"""Scoring saved final checkpoints against a trip CSV."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

from core import CheckpointError
from ensemble import ROW_NAMES, Combiner, build_ensembles, evaluate_ensembles
from geo import Normalizer, trips_to_segments
from nn import evaluate_model, load_checkpoint
from store import checkpoint_path, pipeline_path, read_json, read_trips_csv
from store.paths import META_NAME, RunLayout

from .pipeline import normalize_all

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EvaluationRow:
    model: str
    accuracy: float
    loss: float | None
    configured: bool = False


def resolve_checkpoint_dir(directory: str | Path) -> Path:
    """Accept either the final checkpoint directory or a run's output directory."""
    directory = Path(directory)
    if pipeline_path(directory).exists():
        return directory
    nested = RunLayout.at(directory).final_dir
    if pipeline_path(nested).exists():
        return nested
    raise CheckpointError(f"no pipeline.json in {directory} or {nested}", operation="evaluate")


def evaluate_checkpoints(checkpoint_dir: str | Path, data_csv: str | Path) -> list[EvaluationRow]:
    directory = resolve_checkpoint_dir(checkpoint_dir)
    manifest = read_json(pipeline_path(directory))
    norm = Normalizer.from_dict(manifest["normalizer"])
    class_names = tuple(manifest["class_names"])

    trips = read_trips_csv(data_csv, class_names)
    segments = trips_to_segments(trips, length=manifest["segment_length"], channels=tuple(manifest["channels"]))
    segments = normalize_all(norm, segments)
    logger.info("Evaluating %s on %d segments from %s", directory, len(segments), data_csv)

    globals_, specs = {}, {}
    rows: list[EvaluationRow] = []
    for arch in manifest["base_architectures"]:
        params, spec, _ = load_checkpoint(checkpoint_path(directory, arch))
        if spec is None:
            raise CheckpointError(f"{arch} checkpoint carries no model spec", operation="evaluate")
        globals_[arch], specs[arch] = params, spec
        accuracy, loss = evaluate_model(params, spec, segments)
        rows.append(EvaluationRow(arch, accuracy, loss))

    meta_file = checkpoint_path(directory, META_NAME)
    meta = load_checkpoint(meta_file)[0] if meta_file.exists() else None
    ensembles = build_ensembles(globals_, specs, meta, meta_hidden_size=manifest.get("meta_hidden_size", 64))
    chosen = ROW_NAMES[Combiner(manifest.get("combiner", Combiner.STACKED_MLP.value))]
    for score in evaluate_ensembles(ensembles, segments):
        rows.append(EvaluationRow(score.name, score.accuracy, score.loss, configured=score.name == chosen))
    return rows


def format_rows(rows: list[EvaluationRow]) -> list[str]:
    lines = [f"{'model':<18} {'accuracy':>9} {'loss':>9}"]
    for row in rows:
        loss = f"{row.loss:9.4f}" if row.loss is not None else f"{'-':>9}"
        marker = " *" if row.configured else ""
        lines.append(f"{row.model:<18} {row.accuracy:9.4f} {loss}{marker}")
    return lines
