"""Spherical geometry primitives: great-circle distance, pairwise distance
lists, and spherical centroids.

All distances are haversine distances on a sphere of radius
``EARTH_RADIUS_M`` (6,371,000 m), in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateCentroidError, EmptyInputError

EARTH_RADIUS_M = 6_371_000.0


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 latitude/longitude location in decimal degrees.

    Latitude must lie in [-90, +90]; longitude is normalized into
    [-180, +180) on construction.
    """

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.lat) or not math.isfinite(self.lon):
            raise ValueError(f"non-finite coordinate: ({self.lat}, {self.lon})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude out of range [-90, 90]: {self.lat}")
        lon = ((self.lon + 180.0) % 360.0) - 180.0
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class DistanceList:
    """Ascending unordered-pair distances of a point set, in meters.

    With no upper bound the list holds all n(n-1)/2 pair distances; with a
    bound only pairs at distance <= bound are kept.
    """

    values: np.ndarray
    n_points: int
    upper_bound: float | None = None

    @property
    def count(self) -> int:
        return len(self.values)


def haversine(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in meters."""
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = phi2 - phi1
    dlam = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def _to_radian_array(points: Sequence[GeoPoint]) -> tuple[np.ndarray, np.ndarray]:
    lat = np.radians(np.array([p.lat for p in points], dtype=np.float64))
    lon = np.radians(np.array([p.lon for p in points], dtype=np.float64))
    return lat, lon


def haversine_matrix(points: Sequence[GeoPoint]) -> np.ndarray:
    """Full symmetric n-by-n distance matrix, in meters."""
    if len(points) == 0:
        raise EmptyInputError("haversine_matrix needs at least one point")
    lat, lon = _to_radian_array(points)
    dphi = lat[:, None] - lat[None, :]
    dlam = lon[:, None] - lon[None, :]
    h = np.sin(dphi / 2.0) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlam / 2.0) ** 2
    h = np.clip(h, 0.0, 1.0)
    return 2.0 * EARTH_RADIUS_M * np.arcsin(np.sqrt(h))


def pairwise_distances(
    points: Sequence[GeoPoint], upper_bound: float | None = None
) -> DistanceList:
    """All unordered-pair distances, sorted ascending.

    When ``upper_bound`` is given, only pairs at distance <= upper_bound are
    kept; otherwise the result has exactly n(n-1)/2 entries.
    """
    if len(points) == 0:
        raise EmptyInputError("pairwise_distances needs at least one point")
    n = len(points)
    if n == 1:
        values = np.empty(0, dtype=np.float64)
    else:
        matrix = haversine_matrix(points)
        iu = np.triu_indices(n, k=1)
        values = matrix[iu]
        if upper_bound is not None:
            values = values[values <= upper_bound]
        values = np.sort(values)
    return DistanceList(values=values, n_points=n, upper_bound=upper_bound)


def spherical_centroid(points: Sequence[GeoPoint] | Iterable[GeoPoint]) -> GeoPoint:
    """Centroid as the 3-D unit-vector mean projected back to the sphere.

    Avoids the antimeridian artifacts of naive lat/lon averaging. Raises
    DegenerateCentroidError when the vector mean cancels out (antipodal
    configurations).
    """
    points = list(points)
    if len(points) == 0:
        raise EmptyInputError("spherical_centroid needs at least one point")
    if len(points) == 1:
        return points[0]
    lat, lon = _to_radian_array(points)
    x = np.mean(np.cos(lat) * np.cos(lon))
    y = np.mean(np.cos(lat) * np.sin(lon))
    z = np.mean(np.sin(lat))
    norm = math.sqrt(x * x + y * y + z * z)
    if norm < 1e-9:
        raise DegenerateCentroidError("vector mean magnitude below 1e-9")
    return GeoPoint(
        lat=math.degrees(math.asin(z / norm)),
        lon=math.degrees(math.atan2(y, x)),
    )
