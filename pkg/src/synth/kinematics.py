"""Per-mode speed models for synthetic trips."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

from core import UnknownMode
from geo import ModeLabel


@dataclass(frozen=True)
class ModeKinematics:
    speed_mean: float
    speed_std: float
    accel_burst_prob: float
    accel_magnitude: float
    dwell_prob: float
    speed_persistence: float = 0.2
    heading_noise: float = 0.1

    def __post_init__(self) -> None:
        if self.speed_mean <= 0:
            raise ValueError("speed_mean must be positive")
        if self.speed_std < 0 or self.accel_magnitude < 0 or self.heading_noise < 0:
            raise ValueError("spreads and magnitudes must be non-negative")
        for name in ("accel_burst_prob", "dwell_prob"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a probability, got {value}")
        if not 0.0 <= self.speed_persistence < 1.0:
            raise ValueError("speed_persistence must be in [0, 1)")

    @property
    def speed_ceiling(self) -> float:
        return self.speed_mean + 6.0 * self.speed_std

    def with_overrides(self, **changes: float) -> ModeKinematics:
        return replace(self, **changes)


DEFAULT_KINEMATICS: dict[str, ModeKinematics] = {
    "walk": ModeKinematics(1.4, 0.3, accel_burst_prob=0.05, accel_magnitude=0.5, dwell_prob=0.0),
    "bike": ModeKinematics(4.5, 1.0, accel_burst_prob=0.10, accel_magnitude=1.0, dwell_prob=0.02),
    "car": ModeKinematics(12.0, 5.0, accel_burst_prob=0.20, accel_magnitude=2.5, dwell_prob=0.05),
    "public_transit": ModeKinematics(8.0, 4.0, accel_burst_prob=0.15, accel_magnitude=1.5, dwell_prob=0.15),
}


def kinematics_for(
    mode: ModeLabel,
    table: Mapping[str, ModeKinematics] | None = None,
) -> ModeKinematics:
    table = DEFAULT_KINEMATICS if table is None else table
    try:
        return table[mode.name]
    except KeyError as exc:
        raise UnknownMode(f"no kinematics for mode '{mode.name}'", operation="generate_trip") from exc
