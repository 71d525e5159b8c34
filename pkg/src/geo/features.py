"""Motion features, fixed-length segmentation and channel normalization."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from core import ChannelMismatch, EmptyFit, NonMonotonicTime, TripTooShort

from .distance import geodesic_distance
from .types import (
    CHANNEL_NAMES,
    STD_FLOOR,
    FeatureSegment,
    ModeLabel,
    MotionFeatures,
    Normalizer,
    Trip,
)

DEFAULT_SEGMENT_LENGTH = 10


def compute_motion_features(trip: Trip) -> MotionFeatures:
    """Relative distance, speed, acceleration and jerk for every point of a trip.

    Row i uses the step to point i+1. The last row follows the boundary rules
    S_N = S_{N-1}, A_N = 0, J_N = 0 and D_N = 0.
    """
    n = len(trip.points)
    if n < 2:
        raise TripTooShort(f"trip {trip.trip_id} has {n} point(s); at least 2 required",
                           operation="compute_motion_features")

    _, _, t = trip.arrays()
    dt = np.diff(t)
    if np.any(dt <= 0):
        bad = int(np.argmax(dt <= 0))
        raise NonMonotonicTime(
            f"trip {trip.trip_id}: timestamp {t[bad + 1]} does not follow {t[bad]}",
            operation="compute_motion_features",
        )

    values = np.zeros((n, len(CHANNEL_NAMES)), dtype=np.float64)
    dist = np.array(
        [geodesic_distance(trip.points[i], trip.points[i + 1]) for i in range(n - 1)],
        dtype=np.float64,
    )
    speed = np.empty(n, dtype=np.float64)
    speed[:-1] = dist / dt
    speed[-1] = speed[-2]

    accel = np.zeros(n, dtype=np.float64)
    accel[:-1] = (speed[1:] - speed[:-1]) / dt

    jerk = np.zeros(n, dtype=np.float64)
    jerk[:-1] = (accel[1:] - accel[:-1]) / dt

    values[:-1, 0] = dist
    values[:, 1] = speed
    values[:, 2] = accel
    values[:, 3] = jerk
    return MotionFeatures(values)


def _channel_indices(channels: Sequence[str]) -> list[int]:
    try:
        return [CHANNEL_NAMES.index(name) for name in channels]
    except ValueError as exc:
        raise ChannelMismatch(f"unknown channel in {list(channels)}; expected names from {CHANNEL_NAMES}",
                              operation="segment_trip") from exc


def segment_trip(
    features: MotionFeatures,
    label: ModeLabel,
    length: int = DEFAULT_SEGMENT_LENGTH,
    *,
    channels: Sequence[str] = CHANNEL_NAMES,
    source: str = "",
) -> list[FeatureSegment]:
    """Split feature rows into non-overlapping windows, zero-padding the last one."""
    if length < 1:
        raise ValueError("segment length must be at least 1")
    cols = _channel_indices(channels)
    rows = features.values[:, cols]
    segments: list[FeatureSegment] = []
    for window, start in enumerate(range(0, rows.shape[0], length)):
        chunk = rows[start : start + length]
        matrix = np.zeros((len(cols), length), dtype=np.float64)
        matrix[:, : chunk.shape[0]] = chunk.T
        segments.append(
            FeatureSegment(
                channels=matrix,
                valid_len=int(chunk.shape[0]),
                label=label,
                source=f"{source}:{window}" if source else str(window),
            )
        )
    return segments


def stack_segments(segments: Sequence[FeatureSegment]) -> tuple[np.ndarray, np.ndarray]:
    """Batch segments into X (batch x C x L) and integer labels y."""
    if not segments:
        return np.zeros((0, 0, 0), dtype=np.float64), np.zeros(0, dtype=np.int64)
    x = np.stack([s.channels for s in segments]).astype(np.float64, copy=False)
    y = np.array([s.label.index for s in segments], dtype=np.int64)
    return x, y


def fit_normalizer(
    segments: Sequence[FeatureSegment],
    *,
    channel_names: Sequence[str] | None = None,
) -> Normalizer:
    """Per-channel population mean/std over non-padded columns only."""
    columns = [s.valid_columns() for s in segments if s.valid_len > 0]
    if not columns:
        raise EmptyFit("no non-padded columns to fit on", operation="fit_normalizer")
    n_channels = {c.shape[0] for c in columns}
    if len(n_channels) != 1:
        raise ChannelMismatch(f"segments disagree on channel count: {sorted(n_channels)}",
                              operation="fit_normalizer")
    data = np.concatenate(columns, axis=1)
    mean = data.mean(axis=1)
    std = np.maximum(data.std(axis=1), STD_FLOOR)
    if channel_names is None:
        channel_names = CHANNEL_NAMES[: data.shape[0]]
    if len(channel_names) != data.shape[0]:
        raise ChannelMismatch(f"{len(channel_names)} channel names for {data.shape[0]} channels",
                              operation="fit_normalizer")
    return Normalizer(mean=mean, std=std, channel_names=tuple(channel_names))


def apply_normalizer(norm: Normalizer, seg: FeatureSegment) -> FeatureSegment:
    """Standardize non-padded entries; padded columns stay exactly zero."""
    norm.check_channels(seg.n_channels)
    out = np.zeros_like(seg.channels)
    valid = seg.valid_len
    out[:, :valid] = (seg.channels[:, :valid] - norm.mean[:, None]) / norm.std[:, None]
    return FeatureSegment(channels=out, valid_len=valid, label=seg.label, source=seg.source)


def denormalize(norm: Normalizer, seg: FeatureSegment) -> FeatureSegment:
    norm.check_channels(seg.n_channels)
    out = np.zeros_like(seg.channels)
    valid = seg.valid_len
    out[:, :valid] = seg.channels[:, :valid] * norm.std[:, None] + norm.mean[:, None]
    return FeatureSegment(channels=out, valid_len=valid, label=seg.label, source=seg.source)


def trips_to_segments(
    trips: Sequence[Trip],
    *,
    length: int = DEFAULT_SEGMENT_LENGTH,
    channels: Sequence[str] = CHANNEL_NAMES,
) -> list[FeatureSegment]:
    """Features and segmentation for every trip, in trip order."""
    segments: list[FeatureSegment] = []
    for trip in trips:
        features = compute_motion_features(trip)
        segments.extend(
            segment_trip(features, trip.mode, length, channels=channels, source=str(trip.trip_id))
        )
    return segments
