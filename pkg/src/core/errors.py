"""Error hierarchy shared by every fedmode package.

Each error records the module and operation where it was raised so the CLI can
report context without parsing messages.
"""

from __future__ import annotations

EXIT_OK = 0
EXIT_CONFIG_ERROR = 1
EXIT_RUNTIME_ERROR = 2


class FedModeError(Exception):
    """Base class for all fedmode errors."""

    module = "fedmode"

    def __init__(self, message: str, *, operation: str | None = None) -> None:
        super().__init__(message)
        self.operation = operation

    @property
    def context(self) -> str:
        if self.operation:
            return f"{self.module}.{self.operation}"
        return self.module

    def __str__(self) -> str:
        return f"[{self.context}] {super().__str__()}"


# Configuration -------------------------------------------------------------


class ConfigError(FedModeError):
    module = "config"


class ConfigParseError(ConfigError):
    pass


class UnknownConfigKey(ConfigError):
    def __init__(self, key: str) -> None:
        super().__init__(f"unknown config key '{key}'", operation="load_config")
        self.key = key


class InvalidConfigValue(ConfigError):
    def __init__(self, key: str, reason: str) -> None:
        super().__init__(f"invalid value for '{key}': {reason}", operation="load_config")
        self.key = key


# geo -----------------------------------------------------------------------


class GeoError(FedModeError):
    module = "geo"


class InvalidCoordinate(GeoError):
    pass


class VincentyNonConvergence(GeoError):
    pass


class NonMonotonicTime(GeoError):
    pass


class TripTooShort(GeoError):
    pass


class EmptyFit(GeoError):
    pass


class ChannelMismatch(GeoError):
    pass


class InvalidTripFile(GeoError):
    pass


# synth ---------------------------------------------------------------------


class SynthError(FedModeError):
    module = "synth"


class UnknownMode(SynthError):
    pass


class TooFewSegments(SynthError):
    pass


class InfeasiblePartition(SynthError):
    pass


# nn ------------------------------------------------------------------------


class ModelError(FedModeError):
    module = "nn"


class ShapeMismatch(ModelError):
    pass


class NumericalError(ModelError):
    pass


class InvalidStride(ModelError):
    pass


class InvalidSpec(ModelError):
    pass


class EmptyDataset(ModelError):
    pass


class CheckpointError(ModelError):
    pass


# fed -----------------------------------------------------------------------


class FederationError(FedModeError):
    module = "fed"


class LayoutMismatch(FederationError):
    pass


class EmptyUpdateList(FederationError):
    pass


# ensemble ------------------------------------------------------------------


class EnsembleError(FedModeError):
    module = "ensemble"


class MissingMeta(EnsembleError):
    pass


class LengthMismatch(EnsembleError):
    pass


class EmptyEvaluation(EnsembleError):
    pass


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG_ERROR
    return EXIT_RUNTIME_ERROR
