"""Single-linkage cluster formation, cluster ranking, and ranked-cluster
disambiguation, plus the end-to-end pipeline that derives its own
distance threshold from the density curve.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .corpus import CloudPoint, DocumentInput, PointCloud, to_point_cloud
from .errors import EmptyInputError
from .geo import haversine_matrix, pairwise_distances
from .kfunction import (
    DEFAULT_DELTA_D_M,
    KFunction,
    compute_k_function,
    derive_cluster_distance,
    with_cluster_distance,
)


@dataclass(frozen=True)
class Cluster:
    """A set of cloud points; rank is 1-based after ranking."""

    members: tuple[CloudPoint, ...]
    rank: int | None = None

    def __len__(self) -> int:
        return len(self.members)


class OutcomeStatus(enum.Enum):
    RESOLVED = "resolved"
    AMBIGUOUS_IN_TOP_CLUSTER = "failed_ambiguous_in_top_cluster"
    NO_CANDIDATE_IN_ANY_CLUSTER = "failed_no_candidate_in_any_cluster"


@dataclass(frozen=True)
class MentionOutcome:
    """Outcome for one mention: a chosen entry or a typed failure."""

    status: OutcomeStatus
    entry_id: str | None = None

    @property
    def resolved(self) -> bool:
        return self.status is OutcomeStatus.RESOLVED


@dataclass(frozen=True)
class DisambiguationResult:
    """Per-mention outcomes plus the ranked clusters that produced them."""

    doc_id: str
    outcomes: dict[str, MentionOutcome]
    ranked_clusters: tuple[Cluster, ...]
    diagnostics: KFunction | None = None


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def form_clusters(cloud: PointCloud, cluster_distance: float) -> list[Cluster]:
    """Connected components of the graph joining points within the threshold.

    Single linkage: two points share a cluster iff a chain of hops, each of
    haversine length <= cluster_distance, connects them. Singletons allowed.
    """
    if len(cloud) == 0:
        raise EmptyInputError("cannot cluster an empty cloud")
    if cluster_distance <= 0:
        raise ValueError(f"cluster_distance must be positive, got {cluster_distance}")
    n = len(cloud)
    uf = _UnionFind(n)
    if n > 1:
        matrix = haversine_matrix([p.location for p in cloud.points])
        ii, jj = np.nonzero(np.triu(matrix <= cluster_distance, k=1))
        for a, b in zip(ii.tolist(), jj.tolist()):
            uf.union(a, b)
    groups: dict[int, list[CloudPoint]] = {}
    for i, point in enumerate(cloud.points):
        groups.setdefault(uf.find(i), []).append(point)
    return [Cluster(members=tuple(members)) for members in groups.values()]


def _mean_pairwise(members: tuple[CloudPoint, ...]) -> float:
    if len(members) < 2:
        return 0.0
    matrix = haversine_matrix([p.location for p in members])
    iu = np.triu_indices(len(members), k=1)
    return float(np.mean(matrix[iu]))


def rank_clusters(clusters: list[Cluster]) -> list[Cluster]:
    """Order clusters by member count descending; ties go to the spatially
    tighter cluster (smaller mean pairwise member distance), then to the
    lexicographically smallest member entry_id. Ranks are 1-based.
    """
    keyed = sorted(
        clusters,
        key=lambda c: (-len(c.members), _mean_pairwise(c.members), min(p.entry_id for p in c.members)),
    )
    return [Cluster(members=c.members, rank=i + 1) for i, c in enumerate(keyed)]


def disambiguate(doc: DocumentInput, ranked: list[Cluster]) -> DisambiguationResult:
    """Resolve each mention against the ranked clusters.

    A mention's top-cluster is the best-ranked cluster containing at least
    one of its candidates. Exactly one candidate there resolves the
    mention; several is a typed failure; a candidate in no cluster at all
    (possible when a clusterer leaves noise) is the other failure.
    """
    rank_of_entry: dict[str, int] = {}
    for cluster in ranked:
        assert cluster.rank is not None
        for point in cluster.members:
            rank_of_entry[point.entry_id] = cluster.rank

    outcomes: dict[str, MentionOutcome] = {}
    for mention in doc.mentions:
        ranks = [
            (rank_of_entry[c.entry_id], c.entry_id)
            for c in mention.candidates
            if c.entry_id in rank_of_entry
        ]
        if not ranks:
            outcomes[mention.name] = MentionOutcome(OutcomeStatus.NO_CANDIDATE_IN_ANY_CLUSTER)
            continue
        top = min(rank for rank, _ in ranks)
        in_top = [entry_id for rank, entry_id in ranks if rank == top]
        if len(in_top) == 1:
            outcomes[mention.name] = MentionOutcome(OutcomeStatus.RESOLVED, entry_id=in_top[0])
        else:
            outcomes[mention.name] = MentionOutcome(OutcomeStatus.AMBIGUOUS_IN_TOP_CLUSTER)
    return DisambiguationResult(
        doc_id=doc.doc_id, outcomes=outcomes, ranked_clusters=tuple(ranked)
    )


def densityk_pipeline(
    doc: DocumentInput,
    delta_d: float = DEFAULT_DELTA_D_M,
    upper_bound: float | None = None,
) -> DisambiguationResult:
    """Full density-driven run: point cloud, pair distances, density curve,
    derived threshold, single-linkage clusters, ranking, disambiguation.

    A document whose mentions hold a single candidate in total bypasses
    clustering and resolves trivially to that candidate.
    """
    cloud = to_point_cloud(doc)
    if len(cloud) == 0:
        raise EmptyInputError(f"document {doc.doc_id!r} has no candidates")
    if len(cloud) == 1:
        point = cloud.points[0]
        only = Cluster(members=(point,), rank=1)
        return DisambiguationResult(
            doc_id=doc.doc_id,
            outcomes={point.mention: MentionOutcome(OutcomeStatus.RESOLVED, entry_id=point.entry_id)},
            ranked_clusters=(only,),
        )

    distances = pairwise_distances([p.location for p in cloud.points], upper_bound=upper_bound)
    kf = with_cluster_distance(compute_k_function(distances, len(cloud), delta_d))
    clusters = form_clusters(cloud, kf.cluster_distance)
    ranked = rank_clusters(clusters)
    result = disambiguate(doc, ranked)
    return DisambiguationResult(
        doc_id=result.doc_id,
        outcomes=result.outcomes,
        ranked_clusters=result.ranked_clusters,
        diagnostics=kf,
    )
