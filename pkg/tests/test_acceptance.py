"""Full-size runs of the default experiment; enabled with FEDMODE_RUN_SLOW=1."""

import numpy as np
import pytest

from config import ExperimentConfig
from services import run_experiment
from synth import locality_audit

BASE_ROWS = ("LSTM", "GRU", "CNN1D")
ENSEMBLE_ROWS = ("efeddnn_stacked", "efeddnn_softavg", "efeddnn_vote")


def _run(tmp_path, seed=0, **dataset):
    config = ExperimentConfig.from_dict(
        {"seed": seed, "dataset": dataset, "output_dir": str(tmp_path / f"run-{seed}")}
    ).validate()
    return run_experiment(config).final_accuracy()


@pytest.mark.slow
def test_default_config_learns_every_mode(tmp_path):
    final = _run(tmp_path)
    for arch in BASE_ROWS:
        assert final[arch] >= 0.85, final
    assert locality_audit.foreign_reads == 0


@pytest.mark.slow
def test_one_mode_per_worker_still_learns(tmp_path):
    final = _run(tmp_path, modes_per_worker=1)
    for arch in BASE_ROWS:
        assert final[arch] >= 0.70, final


@pytest.mark.slow
def test_ensemble_keeps_up_with_best_base_learner(tmp_path):
    runs = [_run(tmp_path, seed) for seed in range(5)]
    base = {arch: np.array([r[arch] for r in runs]) for arch in BASE_ROWS}
    ensemble = {name: np.array([r[name] for r in runs]) for name in ENSEMBLE_ROWS}
    best_base = max(base.values(), key=np.mean)
    best_ensemble = max(ensemble.values(), key=np.mean)

    assert best_ensemble.mean() >= best_base.mean() - 0.005, runs
    assert int(np.sum(best_ensemble >= best_base)) >= 3, runs
