"""Synthetic labeled GPS trips with mode-dependent kinematics."""

from __future__ import annotations

import logging
import math
from typing import Mapping, Sequence

import numpy as np

from core import UnknownMode
from geo import DEFAULT_MODE_NAMES, WGS84_A, WGS84_F, GpsPoint, ModeLabel, Trip
from utils import derive_seed

from .kinematics import ModeKinematics, kinematics_for

logger = logging.getLogger(__name__)

ORIGIN_LAT = 45.5
ORIGIN_LON = -73.6
ORIGIN_JITTER_DEG = 0.02
START_TIME = 1_470_000_000.0

_E2 = WGS84_F * (2 - WGS84_F)


def _radii(lat_deg: float) -> tuple[float, float]:
    """Meridian and prime-vertical radii of curvature at a latitude."""
    s = math.sin(math.radians(lat_deg))
    w = math.sqrt(1 - _E2 * s * s)
    meridian = WGS84_A * (1 - _E2) / w**3
    prime_vertical = WGS84_A / w
    return meridian, prime_vertical


def _speed_series(kin: ModeKinematics, n_steps: int, rng: np.random.Generator) -> np.ndarray:
    rho = kin.speed_persistence
    innovation = kin.speed_std * math.sqrt(1 - rho * rho)
    speeds = np.empty(n_steps, dtype=np.float64)
    v = kin.speed_mean + kin.speed_std * rng.standard_normal()
    for i in range(n_steps):
        v = kin.speed_mean + rho * (v - kin.speed_mean) + innovation * rng.standard_normal()
        if rng.random() < kin.accel_burst_prob:
            v += kin.accel_magnitude * (1.0 if rng.random() < 0.5 else -1.0)
        v = min(max(v, 0.0), kin.speed_ceiling)
        speeds[i] = v
    dwell = rng.random(n_steps) < kin.dwell_prob
    speeds[dwell] = 0.0
    return speeds


def generate_trip(
    mode: ModeLabel,
    n_points: int,
    rng_seed: int,
    *,
    kinematics: ModeKinematics | None = None,
    table: Mapping[str, ModeKinematics] | None = None,
    trip_id: int = 0,
) -> Trip:
    """One 1 Hz trip starting near Montreal; deterministic given the seed."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    kin = kinematics if kinematics is not None else kinematics_for(mode, table)

    rng = np.random.default_rng(rng_seed)
    lat = ORIGIN_LAT + ORIGIN_JITTER_DEG * rng.standard_normal()
    lon = ORIGIN_LON + ORIGIN_JITTER_DEG * rng.standard_normal()
    heading = rng.uniform(0.0, 2 * math.pi)
    speeds = _speed_series(kin, n_points - 1, rng)
    turns = kin.heading_noise * rng.standard_normal(n_points - 1)

    points = [GpsPoint(lat, lon, START_TIME)]
    for i, step in enumerate(speeds):
        heading += turns[i]
        if step > 0.0:
            meridian, prime_vertical = _radii(lat)
            lat += math.degrees(step * math.cos(heading) / meridian)
            lon += math.degrees(step * math.sin(heading) / (prime_vertical * math.cos(math.radians(lat))))
        points.append(GpsPoint(lat, lon, START_TIME + float(i + 1)))
    return Trip(points=tuple(points), mode=mode, trip_id=trip_id)


def generate_dataset(
    trips_per_mode: int,
    points_per_trip: int,
    master_seed: int,
    *,
    class_names: Sequence[str] = DEFAULT_MODE_NAMES,
    table: Mapping[str, ModeKinematics] | None = None,
) -> list[Trip]:
    """trips_per_mode trips for every class, mode-major, with hashed per-trip seeds."""
    if trips_per_mode < 1:
        raise ValueError("trips_per_mode must be at least 1")
    labels = ModeLabel.from_names(class_names)
    for label in labels:
        kinematics_for(label, table)

    trips: list[Trip] = []
    for label in labels:
        for k in range(trips_per_mode):
            seed = derive_seed(master_seed, label.index, k)
            trips.append(
                generate_trip(
                    label,
                    points_per_trip,
                    seed,
                    table=table,
                    trip_id=label.index * trips_per_mode + k,
                )
            )
    logger.info("Generated %d synthetic trips (%d modes x %d)", len(trips), len(labels), trips_per_mode)
    return trips


def mode_label(name_or_index: str | int, class_names: Sequence[str] = DEFAULT_MODE_NAMES) -> ModeLabel:
    """Resolve a class name or index to a ModeLabel."""
    if isinstance(name_or_index, int) or str(name_or_index).isdigit():
        index = int(name_or_index)
        if 0 <= index < len(class_names):
            return ModeLabel(index, class_names[index])
    elif name_or_index in class_names:
        return ModeLabel(class_names.index(name_or_index), str(name_or_index))
    raise UnknownMode(f"unknown mode '{name_or_index}'; expected one of {list(class_names)}")
