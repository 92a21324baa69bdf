"""Serialization of density curves (CSV) and clusterings (GeoJSON)."""

from __future__ import annotations

import json

from .clustering import DisambiguationResult
from .kfunction import KFunction


def kfunction_to_csv(kf: KFunction) -> str:
    """CSV with one row per sample plus the derived threshold as a trailing
    comment line."""
    lines = ["d_meters,k_density"]
    for d, k in kf.samples:
        lines.append(f"{d!r},{k!r}")
    if kf.cluster_distance is not None:
        lines.append(f"# cluster_distance_meters={kf.cluster_distance!r}")
    return "\n".join(lines) + "\n"


def clusters_to_geojson(result: DisambiguationResult) -> dict:
    """FeatureCollection of candidate points tagged with their cluster rank."""
    features = []
    for cluster in result.ranked_clusters:
        for point in cluster.members:
            features.append(
                {
                    "type": "Feature",
                    "geometry": {
                        "type": "Point",
                        "coordinates": [point.location.lon, point.location.lat],
                    },
                    "properties": {
                        "entry_id": point.entry_id,
                        "mention": point.mention,
                        "cluster_rank": cluster.rank,
                    },
                }
            )
    return {"type": "FeatureCollection", "features": features}


def result_to_dict(result: DisambiguationResult) -> dict:
    """Plain-JSON view of a disambiguation result."""
    out: dict = {
        "doc_id": result.doc_id,
        "outcomes": {
            name: (
                {"status": outcome.status.value, "entry_id": outcome.entry_id}
                if outcome.resolved
                else {"status": outcome.status.value}
            )
            for name, outcome in result.outcomes.items()
        },
        "clusters": [
            {
                "rank": cluster.rank,
                "entries": [p.entry_id for p in cluster.members],
            }
            for cluster in result.ranked_clusters
        ],
    }
    if result.diagnostics is not None and result.diagnostics.cluster_distance is not None:
        out["cluster_distance_m"] = result.diagnostics.cluster_distance
    return out


def to_canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=1) + "\n"
