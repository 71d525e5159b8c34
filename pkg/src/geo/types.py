"""Domain types for GPS trips and the feature segments derived from them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from core import ChannelMismatch, InvalidCoordinate

DEFAULT_MODE_NAMES: tuple[str, ...] = ("walk", "bike", "car", "public_transit")
CHANNEL_NAMES: tuple[str, ...] = ("distance", "speed", "acceleration", "jerk")
STD_FLOOR = 1e-8


@dataclass(frozen=True)
class GpsPoint:
    lat: float
    lon: float
    t: float

    def __post_init__(self) -> None:
        validate_coordinate(self.lat, self.lon)
        if not math.isfinite(self.t) or self.t < 0:
            raise InvalidCoordinate(f"timestamp must be finite and non-negative, got {self.t}")


def validate_coordinate(lat: float, lon: float) -> None:
    if not (math.isfinite(lat) and -90.0 <= lat <= 90.0):
        raise InvalidCoordinate(f"latitude {lat} outside [-90, 90]")
    if not (math.isfinite(lon) and -180.0 <= lon <= 180.0):
        raise InvalidCoordinate(f"longitude {lon} outside [-180, 180]")


@dataclass(frozen=True)
class ModeLabel:
    index: int
    name: str

    @classmethod
    def from_names(cls, names: Sequence[str]) -> tuple[ModeLabel, ...]:
        return tuple(cls(i, name) for i, name in enumerate(names))


@dataclass(frozen=True)
class Trip:
    """An ordered GPS trace with one ground-truth mode.

    Ordering and length are checked by compute_motion_features, not here, so
    that malformed traces read from disk surface the specific error there.
    """

    points: tuple[GpsPoint, ...]
    mode: ModeLabel
    trip_id: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        lat = np.fromiter((p.lat for p in self.points), dtype=np.float64, count=len(self.points))
        lon = np.fromiter((p.lon for p in self.points), dtype=np.float64, count=len(self.points))
        t = np.fromiter((p.t for p in self.points), dtype=np.float64, count=len(self.points))
        return lat, lon, t


@dataclass(frozen=True, eq=False)
class MotionFeatures:
    """Per-point motion rows; columns follow CHANNEL_NAMES."""

    values: np.ndarray

    def __len__(self) -> int:
        return int(self.values.shape[0])

    @property
    def distance(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def speed(self) -> np.ndarray:
        return self.values[:, 1]

    @property
    def acceleration(self) -> np.ndarray:
        return self.values[:, 2]

    @property
    def jerk(self) -> np.ndarray:
        return self.values[:, 3]


@dataclass(frozen=True, eq=False)
class FeatureSegment:
    """C x L channel matrix; columns at index >= valid_len are zero padding."""

    channels: np.ndarray
    valid_len: int
    label: ModeLabel
    source: str = ""

    @property
    def n_channels(self) -> int:
        return int(self.channels.shape[0])

    @property
    def length(self) -> int:
        return int(self.channels.shape[1])

    def valid_columns(self) -> np.ndarray:
        return self.channels[:, : self.valid_len]


@dataclass(frozen=True, eq=False)
class Normalizer:
    mean: np.ndarray
    std: np.ndarray
    channel_names: tuple[str, ...] = field(default=CHANNEL_NAMES)

    @property
    def n_channels(self) -> int:
        return int(self.mean.shape[0])

    def check_channels(self, n_channels: int) -> None:
        if n_channels != self.n_channels:
            raise ChannelMismatch(
                f"normalizer fitted on {self.n_channels} channels, segment has {n_channels}",
                operation="apply_normalizer",
            )

    def to_dict(self) -> dict[str, object]:
        return {
            "mean": [float(v) for v in self.mean],
            "std": [float(v) for v in self.std],
            "channel_names": list(self.channel_names),
        }

    @classmethod
    def from_dict(cls, data: dict[str, object]) -> Normalizer:
        return cls(
            mean=np.asarray(data["mean"], dtype=np.float64),
            std=np.asarray(data["std"], dtype=np.float64),
            channel_names=tuple(data.get("channel_names", CHANNEL_NAMES)),
        )
