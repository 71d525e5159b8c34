"""Core error types and exit codes."""

from .errors import (
    EXIT_CONFIG_ERROR,
    EXIT_OK,
    EXIT_RUNTIME_ERROR,
    ChannelMismatch,
    CheckpointError,
    ConfigError,
    ConfigParseError,
    EmptyDataset,
    EmptyEvaluation,
    EmptyFit,
    EmptyUpdateList,
    EnsembleError,
    FedModeError,
    InfeasiblePartition,
    InvalidConfigValue,
    InvalidCoordinate,
    InvalidSpec,
    InvalidStride,
    InvalidTripFile,
    LayoutMismatch,
    LengthMismatch,
    MissingMeta,
    NonMonotonicTime,
    NumericalError,
    ShapeMismatch,
    TooFewSegments,
    TripTooShort,
    UnknownConfigKey,
    UnknownMode,
    VincentyNonConvergence,
    exit_code_for,
)

__all__ = [
    "EXIT_CONFIG_ERROR",
    "EXIT_OK",
    "EXIT_RUNTIME_ERROR",
    "ChannelMismatch",
    "CheckpointError",
    "ConfigError",
    "ConfigParseError",
    "EmptyDataset",
    "EmptyEvaluation",
    "EmptyFit",
    "EmptyUpdateList",
    "EnsembleError",
    "FedModeError",
    "InfeasiblePartition",
    "InvalidConfigValue",
    "InvalidCoordinate",
    "InvalidSpec",
    "InvalidStride",
    "InvalidTripFile",
    "LayoutMismatch",
    "LengthMismatch",
    "MissingMeta",
    "NonMonotonicTime",
    "NumericalError",
    "ShapeMismatch",
    "TooFewSegments",
    "TripTooShort",
    "UnknownConfigKey",
    "UnknownMode",
    "VincentyNonConvergence",
    "exit_code_for",
]
