import json

import pytest

from config import ExperimentConfig, load_config, save_config_echo
from core import (
    EXIT_CONFIG_ERROR,
    EXIT_RUNTIME_ERROR,
    ConfigParseError,
    InvalidConfigValue,
    NumericalError,
    UnknownConfigKey,
    exit_code_for,
)


def _write(tmp_path, data, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return path


def test_empty_object_gives_defaults(tmp_path):
    config = load_config(_write(tmp_path, {}))
    fed = config.federation
    assert (fed.n_workers, fed.rounds, fed.local_epochs, fed.local_batch) == (10, 20, 10, 30)
    assert (fed.worker_lr, fed.chief_lr) == (0.0005, 0.001)
    assert config.dataset.segment_length == 10
    assert len(config.dataset.channels) == 4
    assert config.n_classes == 4
    assert config.ensemble.combiner == "stacked_mlp"
    assert config == load_config(None)


def test_partial_override(tmp_path):
    config = load_config(_write(tmp_path, {"federation": {"rounds": 1}}))
    assert config.federation.rounds == 1
    assert config.federation.n_workers == 10


@pytest.mark.parametrize(
    "data, key",
    [({"rouds": 1}, "rouds"), ({"federation": {"workers": 3}}, "federation.workers")],
)
def test_unknown_keys_are_named(tmp_path, data, key):
    with pytest.raises(UnknownConfigKey) as excinfo:
        load_config(_write(tmp_path, data))
    assert key in str(excinfo.value)


@pytest.mark.parametrize(
    "data, key",
    [
        ({"federation": {"rounds": "many"}}, "federation.rounds"),
        ({"federation": {"rounds": 0}}, "federation.rounds"),
        ({"federation": {"aggregation": "median"}}, "federation.aggregation"),
        ({"federation": {"client_fraction": 1.5}}, "federation.client_fraction"),
        ({"dataset": {"channels": ["speed", "heading"]}}, "dataset.channels"),
        ({"ensemble": {"combiner": "boosting"}}, "ensemble.combiner"),
        ({"federation": {"base_architectures": ["LSTM", "GRU"]}}, "federation.base_architectures"),
        ({"federation": {"n_workers": 1}, "dataset": {"modes_per_worker": 2}}, "dataset.modes_per_worker"),
        ({"seed": True}, "seed"),
        ({"dataset": {"points_per_trip": 1}}, "dataset.points_per_trip"),
    ],
)
def test_invalid_values_are_named(tmp_path, data, key):
    with pytest.raises(InvalidConfigValue) as excinfo:
        load_config(_write(tmp_path, data))
    assert key in str(excinfo.value)


def test_parse_errors(tmp_path):
    with pytest.raises(ConfigParseError):
        load_config(_write(tmp_path, "{not json"))
    with pytest.raises(ConfigParseError):
        load_config(tmp_path / "absent.json")


def test_seed_override_from_environment(tmp_path, monkeypatch):
    path = _write(tmp_path, {"seed": 3})
    assert load_config(path).seed == 3
    monkeypatch.setenv("FEDMODE_SEED", "42")
    assert load_config(path).seed == 42
    assert load_config(path, apply_env=False).seed == 3
    monkeypatch.setenv("FEDMODE_SEED", "forty-two")
    with pytest.raises(InvalidConfigValue):
        load_config(path)


def test_config_echo_round_trip(tmp_path, tiny_config_dict):
    config = load_config(_write(tmp_path, tiny_config_dict))
    echo = save_config_echo(config, tmp_path / "out" / "config.echo.json")
    assert load_config(echo) == config
    assert json.loads(echo.read_text())["seed"] == 11


def test_model_specs_follow_dataset_and_overrides():
    config = ExperimentConfig.from_dict({"dataset": {"channels": ["speed", "jerk"], "segment_length": 8},
                                        "model": {"hidden_size": 16}})
    spec = config.model_spec("GRU")
    assert (spec.channels, spec.seq_len, spec.hidden_size, spec.n_classes) == (2, 8, 16, 4)
    assert list(config.base_specs()) == ["LSTM", "GRU", "CNN1D"]


def test_exit_codes():
    assert exit_code_for(UnknownConfigKey("x")) == EXIT_CONFIG_ERROR == 1
    assert exit_code_for(NumericalError("nan")) == EXIT_RUNTIME_ERROR == 2


def test_two_point_trips_are_accepted(tmp_path):
    config = load_config(_write(tmp_path, {"dataset": {"points_per_trip": 2}}))
    assert config.dataset.points_per_trip == 2
