"""Configuration module for fedmode runs."""

from .experiment import (
    COMBINERS,
    DatasetConfig,
    EnsembleConfig,
    ExperimentConfig,
    ModelOverrides,
    load_config,
    save_config_echo,
)
from .settings import (
    LOG_LEVEL,
    METRICS_PORT,
    OUTPUT_DIR,
    RUN_SLOW_TESTS,
    SEED_ENV_VAR,
    seed_override,
)

__all__ = [
    "COMBINERS",
    "LOG_LEVEL",
    "METRICS_PORT",
    "OUTPUT_DIR",
    "RUN_SLOW_TESTS",
    "SEED_ENV_VAR",
    "DatasetConfig",
    "EnsembleConfig",
    "ExperimentConfig",
    "ModelOverrides",
    "load_config",
    "save_config_echo",
    "seed_override",
]
