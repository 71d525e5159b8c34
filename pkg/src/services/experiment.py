"""End-to-end experiment: generate, prepare, federate, ensemble, persist."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from config import ExperimentConfig, save_config_echo
from ensemble import (
    ROW_NAMES,
    Combiner,
    EnsembleScore,
    build_ensembles,
    collect_base_predictions,
    evaluate_ensembles,
    meta_spec,
    train_meta_learner,
)
from fed import FederationState, RoundMetrics, initialize_globals, run_federation
from geo import Trip
from nn import ModelSpec, ParamSet, save_checkpoint
from observability import set_test_accuracy
from store import (
    CentralizedRow,
    MetricsRow,
    RunLayout,
    checkpoint_path,
    pipeline_path,
    write_centralized_csv,
    write_json,
    write_metrics_csv,
)
from store.paths import META_NAME
from synth import DatasetSplit
from utils import derive_seed

from .centralized import train_centralized
from .pipeline import FEDERATION_STREAM, META_STREAM, PreparedData, generate_trips, prepare_data

logger = logging.getLogger(__name__)


@dataclass
class ExperimentResult:
    layout: RunLayout
    state: FederationState
    rows: list[MetricsRow]
    ensemble_scores: dict[int, list[EnsembleScore]] = field(default_factory=dict)
    centralized: list[CentralizedRow] = field(default_factory=list)
    meta: ParamSet | None = None

    def final_accuracy(self) -> dict[str, float]:
        last = self.state.history[-1].round
        return {row.architecture: row.test_accuracy for row in self.rows if row.round == last}


def _meta_for(
    config: ExperimentConfig,
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    split: DatasetSplit,
    round_index: int,
) -> ParamSet:
    """Meta-learner fit on stacked predictions for the proxy split only."""
    stacked = collect_base_predictions(globals_, specs, split.proxy)
    return train_meta_learner(
        stacked,
        epochs=config.ensemble.meta_epochs,
        lr=config.federation.chief_lr,
        rng_seed=derive_seed(config.seed, META_STREAM, round_index),
        hidden_size=config.ensemble.meta_hidden_size,
    )


def _metrics_rows(
    config: ExperimentConfig,
    history: list[RoundMetrics],
    ensemble_scores: Mapping[int, list[EnsembleScore]],
) -> list[MetricsRow]:
    rows: list[MetricsRow] = []
    for metrics in history:
        everyone: set[int] = set()
        for arch in config.federation.base_architectures:
            participants = metrics.participants[arch]
            everyone.update(participants)
            rows.append(MetricsRow(metrics.round, arch, metrics.accuracy[arch], metrics.loss[arch], len(participants)))
        for score in ensemble_scores.get(metrics.round, []):
            rows.append(MetricsRow(metrics.round, score.name, score.accuracy, score.loss, len(everyone)))
    return rows


def _write_checkpoints(
    directory: Path,
    globals_: Mapping[str, ParamSet],
    specs: Mapping[str, ModelSpec],
    round_index: int,
) -> None:
    for arch, params in globals_.items():
        save_checkpoint(checkpoint_path(directory, arch), params, specs[arch], extra={"round": round_index})


def _pipeline_manifest(config: ExperimentConfig, prepared: PreparedData) -> dict:
    return {
        "normalizer": prepared.normalizer.to_dict(),
        "channels": list(config.dataset.channels),
        "segment_length": config.dataset.segment_length,
        "class_names": list(config.dataset.class_names),
        "combiner": config.ensemble.combiner,
        "base_architectures": list(config.federation.base_architectures),
        "meta_hidden_size": config.ensemble.meta_hidden_size,
    }


def _summary(config: ExperimentConfig, result: ExperimentResult) -> dict:
    final = sorted(result.final_accuracy().items(), key=lambda kv: (-kv[1], kv[0]))
    return {
        "seed": config.seed,
        "rounds": config.federation.rounds,
        "combiner": config.ensemble.combiner,
        "final_accuracy": [{"model": name, "test_accuracy": round(acc, 6)} for name, acc in final],
        "centralized": [
            {"architecture": row.architecture, "test_accuracy": round(row.test_accuracy, 6), "epochs": row.epochs}
            for row in result.centralized
        ],
    }


def run_experiment(config: ExperimentConfig, *, trips: list[Trip] | None = None) -> ExperimentResult:
    """Run the whole protocol and write every output file under config.output_dir."""
    layout = RunLayout.at(config.output_dir).ensure()
    save_config_echo(config, layout.config_echo)
    logger.info("Experiment seed=%d output=%s", config.seed, layout.root)

    if trips is None:
        trips = generate_trips(config)
    prepared = prepare_data(config, trips)
    split = prepared.split
    specs = config.base_specs()
    fed_seed = derive_seed(config.seed, FEDERATION_STREAM)
    initial = initialize_globals(specs, config.federation, fed_seed, proxy=split.proxy)

    ensemble_scores: dict[int, list[EnsembleScore]] = {}
    latest_meta: dict[str, ParamSet] = {}
    interval = config.checkpoint_interval

    def on_round(state: FederationState, metrics: RoundMetrics) -> None:
        last = metrics.round == config.federation.rounds
        if config.ensemble.each_round or last:
            meta = _meta_for(config, state.globals, specs, split, metrics.round)
            latest_meta["meta"] = meta
            ensembles = build_ensembles(state.globals, specs, meta,
                                        meta_hidden_size=config.ensemble.meta_hidden_size)
            scores = evaluate_ensembles(ensembles, split.test)
            ensemble_scores[metrics.round] = scores
            for score in scores:
                set_test_accuracy(score.name, score.accuracy)
            logger.info("Round %d ensembles: %s", metrics.round,
                        " ".join(f"{s.name}={s.accuracy:.4f}" for s in scores))
        if interval > 0 and metrics.round % interval == 0:
            _write_checkpoints(layout.round_dir(metrics.round), state.globals, specs, metrics.round)

    state = run_federation(
        config.federation,
        prepared.workers,
        specs,
        split,
        fed_seed,
        initial_globals=initial,
        on_round=on_round,
    )

    meta = latest_meta["meta"]
    _write_checkpoints(layout.final_dir, state.globals, specs, state.round)
    save_checkpoint(
        checkpoint_path(layout.final_dir, META_NAME),
        meta,
        meta_spec(config.n_classes, config.ensemble.meta_hidden_size),
        extra={"round": state.round},
    )
    write_json(pipeline_path(layout.final_dir), _pipeline_manifest(config, prepared))

    rows = _metrics_rows(config, state.history, ensemble_scores)
    write_metrics_csv(layout.metrics_csv, rows)

    result = ExperimentResult(layout=layout, state=state, rows=rows, ensemble_scores=ensemble_scores, meta=meta)
    if config.centralized_baseline:
        result.centralized = train_centralized(config, split, specs, initial)
        write_centralized_csv(layout.centralized_csv, result.centralized)
    write_json(layout.summary, _summary(config, result))

    chosen = ROW_NAMES[Combiner(config.ensemble.combiner)]
    final_scores = {s.name: s.accuracy for s in ensemble_scores[state.round]}
    logger.info("Run complete; %s accuracy %.4f", chosen, final_scores[chosen])
    return result
