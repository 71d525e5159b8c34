"""GPS trips to normalized fixed-length motion-feature segments."""

from .distance import (
    MEAN_EARTH_RADIUS,
    WGS84_A,
    WGS84_F,
    fallback_great_circle,
    geodesic_distance,
    vincenty_inverse,
)
from .features import (
    DEFAULT_SEGMENT_LENGTH,
    apply_normalizer,
    compute_motion_features,
    denormalize,
    fit_normalizer,
    segment_trip,
    stack_segments,
    trips_to_segments,
)
from .types import (
    CHANNEL_NAMES,
    DEFAULT_MODE_NAMES,
    STD_FLOOR,
    FeatureSegment,
    GpsPoint,
    ModeLabel,
    MotionFeatures,
    Normalizer,
    Trip,
)

__all__ = [
    "CHANNEL_NAMES",
    "DEFAULT_MODE_NAMES",
    "DEFAULT_SEGMENT_LENGTH",
    "MEAN_EARTH_RADIUS",
    "STD_FLOOR",
    "WGS84_A",
    "WGS84_F",
    "FeatureSegment",
    "GpsPoint",
    "ModeLabel",
    "MotionFeatures",
    "Normalizer",
    "Trip",
    "apply_normalizer",
    "compute_motion_features",
    "denormalize",
    "fallback_great_circle",
    "fit_normalizer",
    "geodesic_distance",
    "segment_trip",
    "stack_segments",
    "trips_to_segments",
]
