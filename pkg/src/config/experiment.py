"""Experiment configuration: a JSON file mapped onto nested dataclasses.

Absent keys take their defaults; unknown keys and ill-typed values are hard
errors naming the dotted key path.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field, fields, is_dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Any, Mapping, get_args, get_origin, get_type_hints

from core import ConfigParseError, InvalidConfigValue, InvalidSpec, UnknownConfigKey
from ensemble import ENSEMBLE_ORDER
from fed import FederationConfig
from geo import CHANNEL_NAMES, DEFAULT_MODE_NAMES
from nn import Architecture, ModelSpec

from .settings import OUTPUT_DIR, seed_override

logger = logging.getLogger(__name__)

COMBINERS = ("stacked_mlp", "soft_average", "majority_vote")


@dataclass(frozen=True)
class DatasetConfig:
    trips_per_mode: int = 200
    points_per_trip: int = 50
    channels: tuple[str, ...] = CHANNEL_NAMES
    segment_length: int = 10
    class_names: tuple[str, ...] = DEFAULT_MODE_NAMES
    modes_per_worker: int = 2
    proxy_fraction: float = 0.05
    train_fraction: float = 0.8

    def problems(self) -> list[tuple[str, str]]:
        issues: list[tuple[str, str]] = []
        if self.trips_per_mode < 1:
            issues.append(("trips_per_mode", "must be at least 1"))
        if self.points_per_trip < 2:
            issues.append(("points_per_trip", "must be at least 2"))
        if not self.channels or len(set(self.channels)) != len(self.channels):
            issues.append(("channels", "must be a non-empty list of distinct names"))
        unknown = [c for c in self.channels if c not in CHANNEL_NAMES]
        if unknown:
            issues.append(("channels", f"unknown channels {unknown}; choose from {list(CHANNEL_NAMES)}"))
        if self.segment_length < 1:
            issues.append(("segment_length", "must be at least 1"))
        if len(self.class_names) < 2 or len(set(self.class_names)) != len(self.class_names):
            issues.append(("class_names", "must list at least two distinct names"))
        if not 1 <= self.modes_per_worker <= len(self.class_names):
            issues.append(("modes_per_worker", f"must be in [1, {len(self.class_names)}]"))
        if not 0.0 < self.proxy_fraction < 1.0:
            issues.append(("proxy_fraction", "must be in (0, 1)"))
        if not 0.0 < self.train_fraction < 1.0:
            issues.append(("train_fraction", "must be in (0, 1)"))
        return issues


@dataclass(frozen=True)
class ModelOverrides:
    hidden_size: int = 64
    cnn_filters: int = 32
    cnn_kernel: int = 3
    dropout: float = 0.0


@dataclass(frozen=True)
class EnsembleConfig:
    combiner: str = "stacked_mlp"
    meta_epochs: int = 200
    meta_hidden_size: int = 64
    each_round: bool = False

    def problems(self) -> list[tuple[str, str]]:
        issues: list[tuple[str, str]] = []
        if self.combiner not in COMBINERS:
            issues.append(("combiner", f"must be one of {list(COMBINERS)}"))
        if self.meta_epochs < 0:
            issues.append(("meta_epochs", "must be non-negative"))
        if self.meta_hidden_size < 1:
            issues.append(("meta_hidden_size", "must be at least 1"))
        return issues


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    federation: FederationConfig = field(default_factory=FederationConfig)
    model: ModelOverrides = field(default_factory=ModelOverrides)
    ensemble: EnsembleConfig = field(default_factory=EnsembleConfig)
    seed: int = 0
    output_dir: str = str(OUTPUT_DIR)
    checkpoint_interval: int = 0
    centralized_baseline: bool = False
    centralized_epochs: int = 10

    @property
    def n_classes(self) -> int:
        return len(self.dataset.class_names)

    def model_spec(self, architecture: str | Architecture) -> ModelSpec:
        return ModelSpec(
            architecture=Architecture(architecture),
            channels=len(self.dataset.channels),
            seq_len=self.dataset.segment_length,
            hidden_size=self.model.hidden_size,
            n_classes=self.n_classes,
            cnn_filters=self.model.cnn_filters,
            cnn_kernel=self.model.cnn_kernel,
            dropout=self.model.dropout,
        )

    def base_specs(self) -> dict[str, ModelSpec]:
        return {arch: self.model_spec(arch) for arch in self.federation.base_architectures}

    def with_seed(self, seed: int) -> ExperimentConfig:
        return replace(self, seed=seed)

    def with_output_dir(self, output_dir: str | Path) -> ExperimentConfig:
        return replace(self, output_dir=str(output_dir))

    def validate(self) -> ExperimentConfig:
        for section, problems in (
            ("dataset", self.dataset.problems()),
            ("federation", self.federation.problems()),
            ("ensemble", self.ensemble.problems()),
        ):
            if problems:
                key, reason = problems[0]
                raise InvalidConfigValue(f"{section}.{key}", reason)
        unknown = [a for a in self.federation.base_architectures
                   if a not in {arch.value for arch in Architecture} or a == Architecture.MLP.value]
        if unknown:
            raise InvalidConfigValue("federation.base_architectures", f"unsupported architectures {unknown}")
        if sorted(self.federation.base_architectures) != sorted(ENSEMBLE_ORDER):
            raise InvalidConfigValue("federation.base_architectures",
                                     f"the ensemble needs exactly {list(ENSEMBLE_ORDER)}")
        for arch in self.federation.base_architectures:
            try:
                self.model_spec(arch).validate()
            except InvalidSpec as exc:
                raise InvalidConfigValue(f"model ({arch})", str(exc)) from exc
        if self.federation.n_workers * self.dataset.modes_per_worker < self.n_classes:
            raise InvalidConfigValue(
                "dataset.modes_per_worker",
                f"{self.federation.n_workers} workers x {self.dataset.modes_per_worker} modes cannot cover "
                f"{self.n_classes} classes",
            )
        if self.checkpoint_interval < 0:
            raise InvalidConfigValue("checkpoint_interval", "must be non-negative")
        if self.centralized_epochs < 0:
            raise InvalidConfigValue("centralized_epochs", "must be non-negative")
        return self

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ExperimentConfig:
        return _build(cls, data, "")

    def to_dict(self) -> dict[str, Any]:
        return _jsonable(asdict(self))


def _jsonable(value: Any) -> Any:
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _dotted(prefix: str, key: str) -> str:
    return f"{prefix}.{key}" if prefix else key


def _coerce(value: Any, hint: Any, key: str) -> Any:
    if is_dataclass(hint):
        return _build(hint, value, key)
    if hint is bool:
        if not isinstance(value, bool):
            raise InvalidConfigValue(key, f"expected true/false, got {value!r}")
        return value
    if hint is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise InvalidConfigValue(key, f"expected an integer, got {value!r}")
        return value
    if hint is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvalidConfigValue(key, f"expected a number, got {value!r}")
        return float(value)
    if hint is str:
        if not isinstance(value, str):
            raise InvalidConfigValue(key, f"expected a string, got {value!r}")
        return value
    if isinstance(hint, type) and issubclass(hint, Enum):
        try:
            return hint(value)
        except ValueError as exc:
            raise InvalidConfigValue(key, f"expected one of {[m.value for m in hint]}, got {value!r}") from exc
    if get_origin(hint) is tuple:
        item_hint = get_args(hint)[0]
        if not isinstance(value, (list, tuple)):
            raise InvalidConfigValue(key, f"expected a list, got {value!r}")
        return tuple(_coerce(v, item_hint, f"{key}[{i}]") for i, v in enumerate(value))
    raise InvalidConfigValue(key, f"unsupported type {hint!r}")


def _build(cls: type, data: Any, prefix: str) -> Any:
    if not isinstance(data, Mapping):
        raise InvalidConfigValue(prefix or "<root>", f"expected an object, got {type(data).__name__}")
    hints = get_type_hints(cls)
    known = {f.name for f in fields(cls) if f.init}
    for key in data:
        if key not in known:
            raise UnknownConfigKey(_dotted(prefix, key))
    kwargs = {key: _coerce(value, hints[key], _dotted(prefix, key)) for key, value in data.items()}
    try:
        return cls(**kwargs)
    except ValueError as exc:
        raise InvalidConfigValue(prefix or "<root>", str(exc)) from exc


def load_config(path: str | Path | None = None, *, apply_env: bool = True) -> ExperimentConfig:
    """Parse and validate a config file; `None` yields the all-defaults config."""
    data: Any = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigParseError(f"cannot read {path}: {exc}", operation="load_config") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigParseError(
                f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
                operation="load_config",
            ) from exc

    config = ExperimentConfig.from_dict(data)
    if apply_env:
        try:
            override = seed_override()
        except ValueError as exc:
            raise InvalidConfigValue("FEDMODE_SEED", "must be an integer") from exc
        if override is not None:
            logger.info("Master seed %d taken from FEDMODE_SEED", override)
            config = config.with_seed(override)
    return config.validate()


def save_config_echo(config: ExperimentConfig, path: str | Path) -> Path:
    """Write the fully resolved config; load_config on it reproduces the config."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(config.to_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
