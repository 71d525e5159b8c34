
import numpy as np
import pytest

from config import RUN_SLOW_TESTS
from geo import DEFAULT_MODE_NAMES, FeatureSegment, ModeLabel
from synth import generate_dataset, locality_audit

LABELS = ModeLabel.from_names(DEFAULT_MODE_NAMES)


def pytest_collection_modifyitems(config, items):
    if RUN_SLOW_TESTS:
        return
    skip_slow = pytest.mark.skip(reason="set FEDMODE_RUN_SLOW=1 to run slow end-to-end tests")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _reset_locality_audit():
    locality_audit.reset()
    yield
    locality_audit.reset()


@pytest.fixture(autouse=True)
def _no_seed_override(monkeypatch):
    monkeypatch.delenv("FEDMODE_SEED", raising=False)


def make_segments(n_per_class, *, n_classes=4, channels=4, length=10, seed=0, spread=3.0):
    """Separable segments: class c is centered on c * spread in every channel."""
    rng = np.random.default_rng(seed)
    segments = []
    for c in range(n_classes):
        for k in range(n_per_class):
            data = c * spread + rng.standard_normal((channels, length))
            segments.append(FeatureSegment(channels=data, valid_len=length, label=LABELS[c], source=f"{c}-{k}:0"))
    return segments


@pytest.fixture
def separable_segments():
    return make_segments(30)


@pytest.fixture(scope="session")
def small_trips():
    return generate_dataset(5, 25, master_seed=7)


@pytest.fixture
def tiny_config_dict(tmp_path):
    """A configuration small enough for a full train run in a few seconds."""
    return {
        "dataset": {"trips_per_mode": 6, "points_per_trip": 30, "segment_length": 6},
        "federation": {
            "n_workers": 4,
            "rounds": 2,
            "local_epochs": 1,
            "local_batch": 16,
            "pretrain_epochs": 1,
        },
        "model": {"hidden_size": 6, "cnn_filters": 4},
        "ensemble": {"meta_epochs": 3, "meta_hidden_size": 6},
        "seed": 11,
        "output_dir": str(tmp_path / "run"),
    }
