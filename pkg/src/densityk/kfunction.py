"""Annular point-density function over inter-point distance, and the
automatic derivation of a cluster distance threshold from it.

The density at distance ``d`` (a positive multiple of the discretization
step) is the average, over the n input points, of the number of other
points in the ring ``(d - delta_d, d]`` around each point, divided by the
ring's area:

    k(d) = (2 * pairs_in_ring) / (n * pi * (d^2 - (d - delta_d)^2))

Rings containing no pair are skipped, so every emitted density is
positive. Exact duplicates (pair distance 0) are counted in the first
ring, i.e. the first ring is effectively [0, delta_d].

The cluster distance is read off the discretized curve with a 2-sigma
rule: past the density peak, the first sampled distance whose density
falls to at most mean + 2 * std of all sampled densities.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import InsufficientPointsError
from .geo import DistanceList

DEFAULT_DELTA_D_M = 100.0


@dataclass(frozen=True)
class KFunction:
    """Discretized density curve: ascending (d, k) samples, all k > 0."""

    delta_d: float
    distances_m: np.ndarray  # sampled d values, ascending positive multiples of delta_d
    densities: np.ndarray  # per-point density in each ring, same length
    cluster_distance: float | None = None

    def __len__(self) -> int:
        return len(self.distances_m)

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.distances_m.tolist(), self.densities.tolist()))


def _ring_indices(values: np.ndarray, delta_d: float) -> np.ndarray:
    # distance x falls in ring m iff (m-1)*delta_d < x <= m*delta_d; x == 0 -> ring 1
    m = np.ceil(values / delta_d).astype(np.int64)
    return np.maximum(m, 1)


def compute_k_function(
    distances: DistanceList, n_points: int, delta_d: float = DEFAULT_DELTA_D_M
) -> KFunction:
    """Bin pair distances into rings of width ``delta_d`` and compute the
    per-point ring density at each occupied ring.

    ``cluster_distance`` is left unset; see :func:`derive_cluster_distance`.
    """
    if n_points < 2:
        raise InsufficientPointsError(f"need at least 2 points, got {n_points}")
    if delta_d <= 0:
        raise ValueError(f"delta_d must be positive, got {delta_d}")
    if distances.count == 0:
        raise InsufficientPointsError("distance list is empty")

    rings = _ring_indices(distances.values, delta_d)
    occupied, counts = np.unique(rings, return_counts=True)
    d = occupied.astype(np.float64) * delta_d
    areas = np.pi * (d**2 - (d - delta_d) ** 2)
    densities = 2.0 * counts / (n_points * areas)
    return KFunction(delta_d=delta_d, distances_m=d, densities=densities)


def compute_circular_k_function(
    distances: DistanceList, n_points: int, delta_d: float = DEFAULT_DELTA_D_M
) -> KFunction:
    """Variant counting the full disk (0, d] instead of the ring.

    The disk at distance d contains every pair at distance <= d, so past the
    first occupied multiple of ``delta_d`` every multiple is sampled, up to
    the largest pair distance. Used for comparison against the annular
    curve; the annular one is what the pipeline uses.
    """
    if n_points < 2:
        raise InsufficientPointsError(f"need at least 2 points, got {n_points}")
    if delta_d <= 0:
        raise ValueError(f"delta_d must be positive, got {delta_d}")
    if distances.count == 0:
        raise InsufficientPointsError("distance list is empty")

    values = np.sort(distances.values)
    last_ring = int(_ring_indices(values[-1:], delta_d)[0])
    d = np.arange(1, last_ring + 1, dtype=np.float64) * delta_d
    cumulative = np.searchsorted(values, d, side="right")
    keep = cumulative > 0
    d = d[keep]
    densities = 2.0 * cumulative[keep] / (n_points * np.pi * d**2)
    return KFunction(delta_d=delta_d, distances_m=d, densities=densities)


def derive_cluster_distance(kf: KFunction) -> float:
    """Select the cluster distance from a density curve by the 2-sigma rule.

    Let d0 be the smallest sampled distance attaining the maximum density.
    The result is the smallest sampled d > d0 with density <= mean + 2*std
    of all sampled densities; if no sample past the peak satisfies that,
    d0 itself (everything within the densest ring clusters together).
    """
    if len(kf) == 0:
        raise InsufficientPointsError("density curve has no samples")
    ks = kf.densities
    threshold = float(np.mean(ks) + 2.0 * np.std(ks))
    peak = int(np.argmax(ks))  # first index of the max, i.e. smallest such d
    past_peak = np.nonzero(ks[peak + 1 :] <= threshold)[0]
    if len(past_peak) == 0:
        return float(kf.distances_m[peak])
    return float(kf.distances_m[peak + 1 + past_peak[0]])


def with_cluster_distance(kf: KFunction) -> KFunction:
    """Return a copy of ``kf`` with its derived cluster distance filled in."""
    return replace(kf, cluster_distance=derive_cluster_distance(kf))
