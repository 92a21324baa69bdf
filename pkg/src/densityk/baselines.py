"""Comparison heuristics: overall minimum distance, centroid filtering,
distance to unambiguous referents, and DBSCAN (manual epsilon or the
k-nearest-neighbor auto-epsilon).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .clustering import (
    Cluster,
    DisambiguationResult,
    MentionOutcome,
    OutcomeStatus,
    disambiguate,
    rank_clusters,
)
from .corpus import CloudPoint, DocumentInput, PointCloud, to_point_cloud
from .errors import (
    CombinationExplosionError,
    EmptyInputError,
    InsufficientPointsError,
    NoAnchorsError,
)
from .geo import EARTH_RADIUS_M, GeoPoint, haversine, haversine_matrix, spherical_centroid

DEFAULT_COMBINATION_CAP = 10**6
AVG_PAIRWISE = "avg_pairwise"
HULL_AREA = "hull_area"

# candidates closer to the reference point than this are treated as tied
TIE_TOLERANCE_M = 1e-3

_CHUNK = 1 << 18


@dataclass(frozen=True)
class BaselineConfig:
    """Parameter set for one baseline run; see ``validate``."""

    algorithm: str  # omd | centroid | dtur | dbscan | kdist
    epsilon: float | None = None
    min_pts: int | None = None
    k: int | None = None
    omd_measure: str = AVG_PAIRWISE
    combination_cap: int = DEFAULT_COMBINATION_CAP

    def validate(self) -> None:
        if self.algorithm == "dbscan":
            if self.epsilon is None or self.min_pts is None:
                raise ValueError("dbscan requires epsilon and min_pts")
        elif self.algorithm == "kdist":
            if self.k is None or self.min_pts is None:
                raise ValueError("kdist requires k and min_pts")
        elif self.algorithm == "omd":
            if self.omd_measure not in (AVG_PAIRWISE, HULL_AREA):
                raise ValueError(f"unknown omd measure {self.omd_measure!r}")
        elif self.algorithm not in ("centroid", "dtur"):
            raise ValueError(f"unknown baseline algorithm {self.algorithm!r}")


def _single_cluster_result(doc: DocumentInput, chosen: dict[str, str]) -> DisambiguationResult:
    # the ad-hoc heuristics produce exactly one cluster: the selected entries
    by_entry = {c.entry_id: (m.name, c) for m in doc.mentions for c in m.candidates}
    members = tuple(
        CloudPoint(location=by_entry[eid][1].location, entry_id=eid, mention=name)
        for name, eid in ((m.name, chosen[m.name]) for m in doc.mentions)
    )
    outcomes = {
        name: MentionOutcome(OutcomeStatus.RESOLVED, entry_id=eid) for name, eid in chosen.items()
    }
    return DisambiguationResult(
        doc_id=doc.doc_id,
        outcomes=outcomes,
        ranked_clusters=(Cluster(members=members, rank=1),),
    )


def _hull_area_m2(points: list[GeoPoint]) -> float:
    """Planar convex-hull area on an equirectangular projection about the
    points' spherical centroid. Approximate; adequate at document scales.
    """
    if len(points) < 3:
        return 0.0
    center = spherical_centroid(points)
    lat0 = math.radians(center.lat)
    xy = []
    for p in points:
        dlon = math.radians(p.lon - center.lon)
        dlon = (dlon + math.pi) % (2 * math.pi) - math.pi
        xy.append((EARTH_RADIUS_M * dlon * math.cos(lat0), EARTH_RADIUS_M * math.radians(p.lat - center.lat)))
    hull = _convex_hull(sorted(set(xy)))
    if len(hull) < 3:
        return 0.0
    area = 0.0
    for (x1, y1), (x2, y2) in zip(hull, hull[1:] + hull[:1]):
        area += x1 * y2 - x2 * y1
    return abs(area) / 2.0


def _convex_hull(pts: list[tuple[float, float]]) -> list[tuple[float, float]]:
    # monotone chain; input sorted and deduplicated
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _omd_avg_pairwise(doc: DocumentInput, n_combos: int, sizes: list[int]) -> int:
    """Index of the first combination minimizing mean pairwise distance."""
    matrices: dict[tuple[int, int], np.ndarray] = {}
    for a in range(len(sizes)):
        for b in range(a + 1, len(sizes)):
            pts_a = [c.location for c in doc.mentions[a].candidates]
            pts_b = [c.location for c in doc.mentions[b].candidates]
            full = haversine_matrix(pts_a + pts_b)
            matrices[(a, b)] = full[: sizes[a], sizes[a] :]

    best_idx = 0
    best_val = math.inf
    for start in range(0, n_combos, _CHUNK):
        stop = min(start + _CHUNK, n_combos)
        flat = np.arange(start, stop, dtype=np.int64)
        choice = np.array(np.unravel_index(flat, sizes))  # lexicographic, last mention fastest
        total = np.zeros(stop - start, dtype=np.float64)
        for (a, b), mat in matrices.items():
            total += mat[choice[a], choice[b]]
        local = int(np.argmin(total))  # first occurrence on ties
        if total[local] < best_val:
            best_val = float(total[local])
            best_idx = start + local
    return best_idx


def omd(
    doc: DocumentInput,
    measure: str = AVG_PAIRWISE,
    cap: int = DEFAULT_COMBINATION_CAP,
) -> DisambiguationResult:
    """Exhaustive overall-minimum-distance selection.

    Enumerates every one-candidate-per-mention combination (mention order,
    candidate order within a mention) and keeps the first one minimizing
    the chosen measure: mean pairwise distance of the selection, or the
    area of its planar convex hull.
    """
    if len(doc.mentions) == 0:
        raise EmptyInputError(f"document {doc.doc_id!r} has no mentions")
    sizes = [len(m.candidates) for m in doc.mentions]
    n_combos = math.prod(sizes)
    if n_combos > cap:
        raise CombinationExplosionError(
            f"document {doc.doc_id!r}: {n_combos} combinations exceed cap {cap}"
        )
    if len(doc.mentions) == 1:
        # zero pairs, measure vacuous: first candidate wins
        only = doc.mentions[0]
        return _single_cluster_result(doc, {only.name: only.candidates[0].entry_id})

    if measure == AVG_PAIRWISE:
        best = _omd_avg_pairwise(doc, n_combos, sizes)
        indices = np.unravel_index(best, sizes)
        chosen = {
            m.name: m.candidates[int(i)].entry_id for m, i in zip(doc.mentions, indices)
        }
    elif measure == HULL_AREA:
        best_area = math.inf
        chosen = {}
        for combo in itertools.product(*(m.candidates for m in doc.mentions)):
            area = _hull_area_m2([c.location for c in combo])
            if area < best_area:
                best_area = area
                chosen = {m.name: c.entry_id for m, c in zip(doc.mentions, combo)}
    else:
        raise ValueError(f"unknown omd measure {measure!r}")
    return _single_cluster_result(doc, chosen)


def centroid_heuristic(doc: DocumentInput) -> DisambiguationResult:
    """Two-pass centroid selection.

    Pass one: centroid of every candidate location and the distances to it.
    Candidates farther than mean + 2*std of those distances are dropped and
    the centroid recomputed from the survivors. Each mention then takes its
    candidate nearest the final centroid; near-ties (under 1 mm) go to the
    smaller entry_id.
    """
    cloud = to_point_cloud(doc)
    if len(cloud) == 0:
        raise EmptyInputError(f"document {doc.doc_id!r} has no candidates")
    locations = [p.location for p in cloud.points]
    first = spherical_centroid(locations)
    dists = np.array([haversine(first, loc) for loc in locations])
    cutoff = float(np.mean(dists) + 2.0 * np.std(dists))
    survivors = [loc for loc, d in zip(locations, dists) if d <= cutoff]
    final = spherical_centroid(survivors)

    chosen: dict[str, str] = {}
    for mention in doc.mentions:
        scored = sorted(
            (haversine(final, c.location), c.entry_id) for c in mention.candidates
        )
        best_d = scored[0][0]
        tied = [eid for d, eid in scored if d - best_d <= TIE_TOLERANCE_M]
        chosen[mention.name] = min(tied)
    return _single_cluster_result(doc, chosen)


def dtur(doc: DocumentInput) -> DisambiguationResult:
    """Distance to unambiguous referents.

    Mentions with exactly one candidate anchor the document; every other
    mention takes the candidate with the smallest mean distance to the
    anchor locations, ties to the smaller entry_id.
    """
    anchors = [m.candidates[0] for m in doc.mentions if len(m.candidates) == 1]
    if not anchors:
        raise NoAnchorsError(f"document {doc.doc_id!r} has no unambiguous mention")
    chosen: dict[str, str] = {}
    for mention in doc.mentions:
        if len(mention.candidates) == 1:
            chosen[mention.name] = mention.candidates[0].entry_id
            continue
        scored = sorted(
            (
                sum(haversine(c.location, a.location) for a in anchors) / len(anchors),
                c.entry_id,
            )
            for c in mention.candidates
        )
        chosen[mention.name] = scored[0][1]
    return _single_cluster_result(doc, chosen)


def dbscan(cloud: PointCloud, epsilon: float, min_pts: int) -> list[Cluster]:
    """DBSCAN over haversine distance.

    A point is core iff at least ``min_pts`` points (itself included) lie
    within ``epsilon``. Clusters are the connected components of core
    points; a border point joins the cluster of its first core neighbor in
    input order; everything else is noise and belongs to no cluster.
    """
    if len(cloud) == 0:
        raise EmptyInputError("cannot cluster an empty cloud")
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if min_pts < 1:
        raise ValueError(f"min_pts must be >= 1, got {min_pts}")
    n = len(cloud)
    matrix = haversine_matrix([p.location for p in cloud.points])
    within = matrix <= epsilon
    core = within.sum(axis=1) >= min_pts

    labels = [-1] * n
    next_label = 0
    for i in range(n):
        if not core[i] or labels[i] != -1:
            continue
        labels[i] = next_label
        stack = [i]
        while stack:
            j = stack.pop()
            for nb in np.nonzero(within[j])[0]:
                if core[nb] and labels[nb] == -1:
                    labels[nb] = next_label
                    stack.append(int(nb))
        next_label += 1

    # border points: first core neighbor in input order decides the cluster
    for i in range(n):
        if core[i]:
            continue
        for nb in np.nonzero(within[i])[0]:
            if core[nb]:
                labels[i] = labels[nb]
                break

    groups: dict[int, list[CloudPoint]] = {}
    for i, point in enumerate(cloud.points):
        if labels[i] != -1:
            groups.setdefault(labels[i], []).append(point)
    return [Cluster(members=tuple(members)) for members in groups.values()]


def kdist_epsilon(cloud: PointCloud, k: int) -> float:
    """Auto-epsilon from the k-th-nearest-neighbor distance distribution.

    Computes each point's distance to its k-th nearest neighbor (self
    excluded) and returns mean + 2*std of those values.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(cloud) <= k:
        raise InsufficientPointsError(f"need more than {k} points, got {len(cloud)}")
    matrix = haversine_matrix([p.location for p in cloud.points])
    np.fill_diagonal(matrix, np.inf)
    kth = np.sort(matrix, axis=1)[:, k - 1]
    return float(np.mean(kth) + 2.0 * np.std(kth))


def dbscan_disambiguate(doc: DocumentInput, epsilon: float, min_pts: int) -> DisambiguationResult:
    """DBSCAN clusters fed through the shared ranking and top-cluster scan."""
    cloud = to_point_cloud(doc)
    ranked = rank_clusters(dbscan(cloud, epsilon, min_pts))
    return disambiguate(doc, ranked)


def kdist_disambiguate(doc: DocumentInput, k: int, min_pts: int) -> DisambiguationResult:
    """DBSCAN with the auto-derived epsilon."""
    cloud = to_point_cloud(doc)
    epsilon = kdist_epsilon(cloud, k)
    ranked = rank_clusters(dbscan(cloud, epsilon, min_pts))
    return disambiguate(doc, ranked)


def run_baseline(doc: DocumentInput, config: BaselineConfig) -> DisambiguationResult:
    """Dispatch one configured baseline over one document."""
    config.validate()
    if config.algorithm == "omd":
        return omd(doc, measure=config.omd_measure, cap=config.combination_cap)
    if config.algorithm == "centroid":
        return centroid_heuristic(doc)
    if config.algorithm == "dtur":
        return dtur(doc)
    if config.algorithm == "dbscan":
        return dbscan_disambiguate(doc, epsilon=config.epsilon, min_pts=config.min_pts)
    if config.algorithm == "kdist":
        return kdist_disambiguate(doc, k=config.k, min_pts=config.min_pts)
    raise ValueError(f"unknown baseline algorithm {config.algorithm!r}")
