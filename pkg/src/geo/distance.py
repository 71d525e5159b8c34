"""Geodesic distances on the WGS84 ellipsoid."""

from __future__ import annotations

import logging
import math

from core import VincentyNonConvergence

from .types import GpsPoint, validate_coordinate

logger = logging.getLogger(__name__)

WGS84_A = 6378137.0
WGS84_F = 1 / 298.257223563
WGS84_B = (1 - WGS84_F) * WGS84_A
MEAN_EARTH_RADIUS = 6371008.8

VINCENTY_TOLERANCE = 1e-12
VINCENTY_MAX_ITER = 200


def vincenty_inverse(
    p1: GpsPoint,
    p2: GpsPoint,
    *,
    max_iter: int = VINCENTY_MAX_ITER,
    tol: float = VINCENTY_TOLERANCE,
) -> float:
    """Ellipsoidal distance in meters between two points (Vincenty inverse problem).

    Raises VincentyNonConvergence when lambda has not settled within max_iter
    iterations, which happens only for nearly antipodal pairs.
    """
    validate_coordinate(p1.lat, p1.lon)
    validate_coordinate(p2.lat, p2.lon)
    if p1.lat == p2.lat and p1.lon == p2.lon:
        return 0.0

    a, b, f = WGS84_A, WGS84_B, WGS84_F
    u1 = math.atan((1 - f) * math.tan(math.radians(p1.lat)))
    u2 = math.atan((1 - f) * math.tan(math.radians(p2.lat)))
    big_l = math.radians(p2.lon - p1.lon)
    sin_u1, cos_u1 = math.sin(u1), math.cos(u1)
    sin_u2, cos_u2 = math.sin(u2), math.cos(u2)

    lam = big_l
    for _ in range(max_iter):
        sin_lam, cos_lam = math.sin(lam), math.cos(lam)
        sin_sigma = math.hypot(cos_u2 * sin_lam, cos_u1 * sin_u2 - sin_u1 * cos_u2 * cos_lam)
        if sin_sigma == 0.0:
            return 0.0
        cos_sigma = sin_u1 * sin_u2 + cos_u1 * cos_u2 * cos_lam
        sigma = math.atan2(sin_sigma, cos_sigma)
        sin_alpha = cos_u1 * cos_u2 * sin_lam / sin_sigma
        cos_sq_alpha = 1 - sin_alpha * sin_alpha
        # Equatorial line: cos_sq_alpha == 0 and the midpoint term vanishes.
        cos_2sigma_m = cos_sigma - 2 * sin_u1 * sin_u2 / cos_sq_alpha if cos_sq_alpha != 0.0 else 0.0
        c = f / 16 * cos_sq_alpha * (4 + f * (4 - 3 * cos_sq_alpha))
        lam_prev = lam
        lam = big_l + (1 - c) * f * sin_alpha * (
            sigma + c * sin_sigma * (cos_2sigma_m + c * cos_sigma * (-1 + 2 * cos_2sigma_m**2))
        )
        if abs(lam - lam_prev) < tol:
            break
    else:
        raise VincentyNonConvergence(
            f"no convergence after {max_iter} iterations for ({p1.lat}, {p1.lon}) -> ({p2.lat}, {p2.lon})",
            operation="vincenty_inverse",
        )

    u_sq = cos_sq_alpha * (a * a - b * b) / (b * b)
    big_a = 1 + u_sq / 16384 * (4096 + u_sq * (-768 + u_sq * (320 - 175 * u_sq)))
    big_b = u_sq / 1024 * (256 + u_sq * (-128 + u_sq * (74 - 47 * u_sq)))
    delta_sigma = big_b * sin_sigma * (
        cos_2sigma_m
        + big_b
        / 4
        * (
            cos_sigma * (-1 + 2 * cos_2sigma_m**2)
            - big_b / 6 * cos_2sigma_m * (-3 + 4 * sin_sigma**2) * (-3 + 4 * cos_2sigma_m**2)
        )
    )
    return b * big_a * (sigma - delta_sigma)


def fallback_great_circle(p1: GpsPoint, p2: GpsPoint) -> float:
    """Spherical great-circle distance with the mean Earth radius (haversine)."""
    validate_coordinate(p1.lat, p1.lon)
    validate_coordinate(p2.lat, p2.lon)
    phi1, phi2 = math.radians(p1.lat), math.radians(p2.lat)
    dphi = phi2 - phi1
    dlam = math.radians(p2.lon - p1.lon)
    h = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    h = min(1.0, max(0.0, h))
    return 2 * MEAN_EARTH_RADIUS * math.atan2(math.sqrt(h), math.sqrt(1 - h))


def geodesic_distance(p1: GpsPoint, p2: GpsPoint) -> float:
    """Vincenty distance, falling back to the great circle near antipodes."""
    try:
        return vincenty_inverse(p1, p2)
    except VincentyNonConvergence:
        logger.debug("Vincenty did not converge; using great-circle distance")
        return fallback_great_circle(p1, p2)
