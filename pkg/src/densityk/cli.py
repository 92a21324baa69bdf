"""Command-line surface.

Exit codes: 0 success; 1 input, schema, or configuration errors; 2
algorithm errors (infeasible instances such as a combination explosion or
a document with no unambiguous anchor).
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .baselines import BaselineConfig
from .clustering import densityk_pipeline
from .corpus import load_corpus, load_document_file, to_point_cloud
from .errors import (
    CombinationExplosionError,
    DegenerateCentroidError,
    DensityKError,
    DocumentParseError,
    DocumentSchemaError,
    EmptyInputError,
    InsufficientPointsError,
    NoAnchorsError,
    RejectionOverflowError,
)
from .evaluation import (
    GRID_PRESETS,
    AlgorithmConfig,
    evaluate_corpus,
    report_to_csv,
    report_to_dict,
    run_algorithm,
)
from .export import (
    clusters_to_geojson,
    kfunction_to_csv,
    result_to_dict,
    to_canonical_json,
)
from .geo import pairwise_distances
from .kfunction import DEFAULT_DELTA_D_M, compute_k_function, with_cluster_distance
from .synth import SynthSpec, synth_generate, write_corpus

_INPUT_ERRORS = (DocumentParseError, DocumentSchemaError)
_ALGORITHM_ERRORS = (
    CombinationExplosionError,
    NoAnchorsError,
    InsufficientPointsError,
    EmptyInputError,
    DegenerateCentroidError,
    RejectionOverflowError,
)


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _build_config(algorithm: str, epsilon, min_pts, k, delta_d, upper_bound, measure, cap) -> AlgorithmConfig:
    params: list[tuple[str, float | int | str]] = []
    if algorithm == "densityk":
        params.append(("delta_d", float(delta_d)))
        if upper_bound is not None:
            params.append(("upper_bound", float(upper_bound)))
    else:
        try:
            BaselineConfig(
                algorithm=algorithm,
                epsilon=epsilon,
                min_pts=min_pts,
                k=k,
                omd_measure={"avg": "avg_pairwise", "hull": "hull_area"}.get(measure, measure),
                combination_cap=cap,
            ).validate()
        except ValueError as exc:
            _fail(1, str(exc))
        if epsilon is not None:
            params.append(("epsilon", float(epsilon)))
        if min_pts is not None:
            params.append(("min_pts", int(min_pts)))
        if k is not None:
            params.append(("k", int(k)))
        if algorithm == "omd":
            params.append(("measure", {"avg": "avg_pairwise", "hull": "hull_area"}.get(measure, measure)))
            params.append(("cap", int(cap)))
    return AlgorithmConfig(algorithm=algorithm, params=tuple(params))


def _algorithm_options(fn):
    fn = click.option("--epsilon", type=float, default=None, help="DBSCAN neighborhood distance, meters.")(fn)
    fn = click.option("--min-pts", type=int, default=None, help="DBSCAN minimum points per cluster.")(fn)
    fn = click.option("--k", type=int, default=None, help="Neighbor rank for the auto-epsilon rule.")(fn)
    fn = click.option("--delta-d", type=float, default=DEFAULT_DELTA_D_M, show_default=True, help="Density curve discretization step, meters.")(fn)
    fn = click.option("--upper-bound", type=float, default=None, help="Optional pair-distance cutoff, meters.")(fn)
    fn = click.option("--measure", type=click.Choice(["avg", "hull"]), default="avg", show_default=True, help="Minimum-distance objective.")(fn)
    fn = click.option("--cap", type=int, default=BaselineConfig.combination_cap, show_default=True, help="Combination cap for the exhaustive search.")(fn)
    return fn


@click.group()
def main() -> None:
    """Disambiguate fine-grained place names by clustering their candidate
    locations."""


@main.command()
@click.option("--algorithm", type=click.Choice(["densityk", "dbscan", "kdist", "omd", "centroid", "dtur"]), default="densityk", show_default=True)
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", "output_path", type=click.Path(path_type=Path), required=True)
@_algorithm_options
def disambiguate(algorithm, input_path, output_path, epsilon, min_pts, k, delta_d, upper_bound, measure, cap) -> None:
    """Resolve one document to a result JSON with one outcome per mention."""
    config = _build_config(algorithm, epsilon, min_pts, k, delta_d, upper_bound, measure, cap)
    try:
        doc = load_document_file(input_path)
    except _INPUT_ERRORS as exc:
        _fail(1, str(exc))
    except OSError as exc:
        _fail(1, f"cannot read {input_path}: {exc}")
    try:
        result = run_algorithm(doc, config)
    except _ALGORITHM_ERRORS as exc:
        _fail(2, f"document {doc.doc_id!r}: {exc}")
    payload = result_to_dict(result)
    payload["algorithm"] = config.algorithm
    payload["params"] = config.param_dict
    output_path.write_text(to_canonical_json(payload), encoding="utf-8")


@main.command()
@click.option("--corpus", "corpus_path", type=click.Path(path_type=Path), required=True, help="Directory of document JSON files or a JSON-lines file.")
@click.option("--output", "output_path", type=click.Path(path_type=Path), required=True)
@click.option("--grid", "grid_name", default=None, help="Named grid preset (e.g. table1).")
@click.option("--cell", "cells", multiple=True, help="Explicit cell, e.g. dbscan:epsilon=2000,min_pts=5. Repeatable.")
@click.option("--csv", "csv_path", type=click.Path(path_type=Path), default=None, help="Also write the flattened per-document CSV here.")
@click.option("--workers", type=int, default=1, show_default=True)
def evaluate(corpus_path, output_path, grid_name, cells, csv_path, workers) -> None:
    """Run an algorithm grid over a ground-truthed corpus and report
    per-cell macro precision and distance error."""
    configs: list[AlgorithmConfig] = []
    if grid_name is not None:
        if grid_name not in GRID_PRESETS:
            _fail(1, f"unknown grid preset {grid_name!r}; known: {sorted(GRID_PRESETS)}")
        configs.extend(GRID_PRESETS[grid_name]())
    for cell in cells:
        try:
            configs.append(_parse_cell(cell))
        except ValueError as exc:
            _fail(1, f"bad --cell {cell!r}: {exc}")
    if not configs:
        _fail(1, "no cells to evaluate; pass --grid or --cell")
    try:
        docs = load_corpus(corpus_path)
    except _INPUT_ERRORS as exc:
        _fail(1, str(exc))
    except OSError as exc:
        _fail(1, f"cannot read corpus {corpus_path}: {exc}")
    if not docs:
        _fail(1, f"corpus {corpus_path} holds no documents")
    missing = [d.doc_id for d in docs if not d.ground_truth]
    if missing:
        _fail(1, f"documents without ground truth cannot be evaluated: {missing[:5]}")
    report = evaluate_corpus(docs, configs, workers=workers)
    output_path.write_text(to_canonical_json(report_to_dict(report)), encoding="utf-8")
    if csv_path is not None:
        csv_path.write_text(report_to_csv(report), encoding="utf-8")


def _parse_cell(text: str) -> AlgorithmConfig:
    algorithm, _, rest = text.partition(":")
    params: list[tuple[str, float | int | str]] = []
    if rest:
        for piece in rest.split(","):
            key, sep, value = piece.partition("=")
            if not sep:
                raise ValueError(f"expected key=value, got {piece!r}")
            key = key.strip()
            value = value.strip()
            try:
                parsed: float | int | str = int(value)
            except ValueError:
                try:
                    parsed = float(value)
                except ValueError:
                    parsed = value
            params.append((key, parsed))
    return AlgorithmConfig(algorithm=algorithm.strip(), params=tuple(params))


@main.command()
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", "output_path", type=click.Path(path_type=Path), required=True)
@click.option("--delta-d", type=float, default=DEFAULT_DELTA_D_M, show_default=True)
@click.option("--upper-bound", type=float, default=None)
def kfunction(input_path, output_path, delta_d, upper_bound) -> None:
    """Export a document's density curve and derived threshold as CSV."""
    try:
        doc = load_document_file(input_path)
    except _INPUT_ERRORS as exc:
        _fail(1, str(exc))
    except OSError as exc:
        _fail(1, f"cannot read {input_path}: {exc}")
    cloud = to_point_cloud(doc)
    try:
        distances = pairwise_distances([p.location for p in cloud.points], upper_bound=upper_bound)
        kf = with_cluster_distance(compute_k_function(distances, len(cloud), delta_d))
    except _ALGORITHM_ERRORS as exc:
        _fail(2, f"document {doc.doc_id!r}: {exc}")
    output_path.write_text(kfunction_to_csv(kf), encoding="utf-8")


@main.command()
@click.option("--algorithm", type=click.Choice(["densityk", "dbscan", "kdist", "omd", "centroid", "dtur"]), default="densityk", show_default=True)
@click.option("--input", "input_path", type=click.Path(path_type=Path), required=True)
@click.option("--output", "output_path", type=click.Path(path_type=Path), required=True)
@_algorithm_options
def clusters(algorithm, input_path, output_path, epsilon, min_pts, k, delta_d, upper_bound, measure, cap) -> None:
    """Export the clusters an algorithm derives for a document as GeoJSON."""
    config = _build_config(algorithm, epsilon, min_pts, k, delta_d, upper_bound, measure, cap)
    try:
        doc = load_document_file(input_path)
    except _INPUT_ERRORS as exc:
        _fail(1, str(exc))
    except OSError as exc:
        _fail(1, f"cannot read {input_path}: {exc}")
    try:
        result = run_algorithm(doc, config)
    except _ALGORITHM_ERRORS as exc:
        _fail(2, f"document {doc.doc_id!r}: {exc}")
    output_path.write_text(to_canonical_json(clusters_to_geojson(result)), encoding="utf-8")


@main.command()
@click.option("--output", "output_dir", type=click.Path(path_type=Path), required=True)
@click.option("--n-docs", type=int, default=SynthSpec.n_docs, show_default=True)
@click.option("--mentions", type=int, default=SynthSpec.mentions_per_doc, show_default=True)
@click.option("--decoys-min", type=int, default=SynthSpec.decoys_per_mention[0], show_default=True)
@click.option("--decoys-max", type=int, default=SynthSpec.decoys_per_mention[1], show_default=True)
@click.option("--context-radius", type=float, default=SynthSpec.context_radius, show_default=True)
@click.option("--decoy-separation", type=float, default=SynthSpec.min_decoy_separation, show_default=True)
@click.option("--decoy-distance", type=float, default=SynthSpec.min_decoy_distance_from_context, show_default=True)
@click.option("--seed", type=int, default=SynthSpec.seed, show_default=True)
def synth(output_dir, n_docs, mentions, decoys_min, decoys_max, context_radius, decoy_separation, decoy_distance, seed) -> None:
    """Generate a seeded synthetic corpus with planted ground truth."""
    if decoys_min > decoys_max or decoys_min < 0:
        _fail(1, f"bad decoy range ({decoys_min}, {decoys_max})")
    spec = SynthSpec(
        n_docs=n_docs,
        mentions_per_doc=mentions,
        decoys_per_mention=(decoys_min, decoys_max),
        context_radius=context_radius,
        min_decoy_separation=decoy_separation,
        min_decoy_distance_from_context=decoy_distance,
        seed=seed,
    )
    try:
        docs = synth_generate(spec)
    except _ALGORITHM_ERRORS as exc:
        _fail(2, str(exc))
    write_corpus(docs, output_dir)
    click.echo(f"wrote {len(docs)} documents to {output_dir}")


if __name__ == "__main__":
    main()
