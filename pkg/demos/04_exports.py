"""Exporting artifacts: corpus files, density-curve CSV, cluster GeoJSON.

Everything the CLI writes is available as a library call; this script
produces the same artifacts into ./demo_output for inspection in a text
editor or any GeoJSON viewer.
"""

from pathlib import Path

from densityk import (
    clusters_to_geojson,
    compute_k_function,
    densityk_pipeline,
    kfunction_to_csv,
    pairwise_distances,
    to_canonical_json,
    to_point_cloud,
    with_cluster_distance,
)
from densityk.synth import SynthSpec, synth_generate, write_corpus

out = Path(__file__).parent / "demo_output"
docs = synth_generate(SynthSpec(n_docs=3, seed=7))

# 1. The corpus itself, one canonical JSON file per document.
paths = write_corpus(docs, out / "corpus")
print(f"wrote {len(paths)} documents to {out / 'corpus'}")

# 2. The density curve of the first document, with the derived threshold
#    as a trailing comment line.
doc = docs[0]
cloud = to_point_cloud(doc)
distances = pairwise_distances([p.location for p in cloud.points])
kf = with_cluster_distance(compute_k_function(distances, len(cloud)))
(out / f"{doc.doc_id}_kfunction.csv").write_text(kfunction_to_csv(kf))
print(f"wrote {doc.doc_id}_kfunction.csv ({len(kf)} samples, "
      f"threshold {kf.cluster_distance:,.0f} m)")

# 3. The clustering as GeoJSON: every candidate point tagged with its
#    cluster rank, rank 1 being the spatial context.
result = densityk_pipeline(doc)
geojson = clusters_to_geojson(result)
(out / f"{doc.doc_id}_clusters.geojson").write_text(to_canonical_json(geojson))
print(f"wrote {doc.doc_id}_clusters.geojson ({len(geojson['features'])} features)")
