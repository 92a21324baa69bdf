"""Independent reference implementations used only to check the library.

Everything here is deliberately plain Python (no numpy) and written from
the definitions, not from the library code paths it verifies.
"""

from __future__ import annotations

import itertools
import math
import statistics


def slow_haversine(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    r = 6_371_000.0
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * r * math.asin(min(1.0, math.sqrt(h)))


def vector_mean_centroid(coords: list[tuple[float, float]]) -> tuple[float, float]:
    """Unit-vector mean on the sphere, re-derived from scratch."""
    sx = sy = sz = 0.0
    for lat, lon in coords:
        la, lo = math.radians(lat), math.radians(lon)
        sx += math.cos(la) * math.cos(lo)
        sy += math.cos(la) * math.sin(lo)
        sz += math.sin(la)
    n = len(coords)
    sx, sy, sz = sx / n, sy / n, sz / n
    norm = math.sqrt(sx * sx + sy * sy + sz * sz)
    return (
        math.degrees(math.asin(sz / norm)),
        math.degrees(math.atan2(sy, sx)),
    )


def annular_density_curve(
    distances: list[float], n_points: int, delta_d: float
) -> list[tuple[float, float]]:
    """Literal evaluation of the annular density definition.

    For each positive multiple d of delta_d, count pair distances in
    (d - delta_d, d] (zero goes to the first ring) and divide twice the
    count by n * ring area. Empty rings are skipped.
    """
    counts: dict[int, int] = {}
    for x in distances:
        ring = math.ceil(x / delta_d)
        if ring < 1:
            ring = 1
        counts[ring] = counts.get(ring, 0) + 1
    curve = []
    for ring in sorted(counts):
        d = ring * delta_d
        area = math.pi * (d * d - (d - delta_d) * (d - delta_d))
        curve.append((d, 2.0 * counts[ring] / (n_points * area)))
    return curve


def two_sigma_threshold_distance(curve: list[tuple[float, float]]) -> float:
    """Literal thresholding: mean + 2 * population std over the densities,
    then the smallest d past the (first) peak whose density is at or below
    it; the peak distance itself when nothing past the peak qualifies."""
    ks = [k for _, k in curve]
    mean = statistics.fmean(ks)
    std = statistics.pstdev(ks)
    cut = mean + 2 * std
    peak = ks.index(max(ks))
    for i in range(peak + 1, len(curve)):
        if curve[i][1] <= cut:
            return curve[i][0]
    return curve[peak][0]


def label_propagation_components(
    coords: list[tuple[float, float]], threshold: float
) -> list[frozenset[int]]:
    """Connected components at the distance threshold, by iterating label
    propagation to a fixed point (no union-find)."""
    n = len(coords)
    adj = [
        [j for j in range(n) if j != i and slow_haversine(*coords[i], *coords[j]) <= threshold]
        for i in range(n)
    ]
    labels = list(range(n))
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in adj[i]:
                if labels[j] < labels[i]:
                    labels[i] = labels[j]
                    changed = True
    groups: dict[int, set[int]] = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, set()).add(i)
    return [frozenset(g) for g in groups.values()]


def reference_dbscan(
    coords: list[tuple[float, float]], epsilon: float, min_pts: int
) -> list[int]:
    """Textbook DBSCAN; returns a label per point, -1 for noise. Border
    points take the cluster of their first core neighbor in input order."""
    n = len(coords)
    neighbors = [
        [j for j in range(n) if slow_haversine(*coords[i], *coords[j]) <= epsilon]
        for i in range(n)
    ]
    core = [len(neighbors[i]) >= min_pts for i in range(n)]
    labels = [-1] * n
    cluster = 0
    for i in range(n):
        if not core[i] or labels[i] != -1:
            continue
        queue = [i]
        labels[i] = cluster
        while queue:
            j = queue.pop(0)
            for nb in neighbors[j]:
                if core[nb] and labels[nb] == -1:
                    labels[nb] = cluster
                    queue.append(nb)
        cluster += 1
    for i in range(n):
        if core[i]:
            continue
        for nb in neighbors[i]:
            if core[nb]:
                labels[i] = labels[nb]
                break
    return labels


def exhaustive_min_combination(
    candidate_coords: list[list[tuple[float, float]]],
) -> tuple[tuple[int, ...], float]:
    """Enumerate every one-per-mention choice and return the first one with
    the smallest mean pairwise distance."""
    best: tuple[int, ...] | None = None
    best_val = math.inf
    for combo in itertools.product(*(range(len(c)) for c in candidate_coords)):
        chosen = [candidate_coords[m][i] for m, i in enumerate(combo)]
        total = 0.0
        pairs = 0
        for a, b in itertools.combinations(chosen, 2):
            total += slow_haversine(*a, *b)
            pairs += 1
        val = total / pairs if pairs else 0.0
        if val < best_val:
            best_val = val
            best = combo
    assert best is not None
    return best, best_val


def kth_neighbor_distances(
    coords: list[tuple[float, float]], k: int
) -> list[float]:
    out = []
    for i, a in enumerate(coords):
        ds = sorted(
            slow_haversine(*a, *b) for j, b in enumerate(coords) if j != i
        )
        out.append(ds[k - 1])
    return out
