"""Ground-truth scoring and corpus-level grid evaluation.

Precision per document is the fraction of ground-truth mentions resolved
to their true entry; failures count against precision. Distance error is
the mean great-circle distance (km) between the selected and true entry
locations, over resolved mentions with truth only. Corpus aggregates are
macro (unweighted per-document) averages.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .baselines import BaselineConfig, run_baseline
from .clustering import DisambiguationResult, densityk_pipeline
from .corpus import DocumentInput
from .errors import DensityKError, MissingTruthError
from .geo import haversine
from .kfunction import DEFAULT_DELTA_D_M

ParamsTuple = tuple[tuple[str, float | int | str], ...]


@dataclass(frozen=True)
class AlgorithmConfig:
    """One grid cell: an algorithm name plus its parameter values."""

    algorithm: str
    params: ParamsTuple = ()

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    @property
    def key(self) -> str:
        if not self.params:
            return self.algorithm
        return self.algorithm + ":" + ",".join(f"{k}={v}" for k, v in self.params)


@dataclass(frozen=True)
class DocumentScore:
    doc_id: str
    precision: float
    avg_distance_error_km: float
    resolved_count: int
    failed_count: int
    truth_count: int
    correct_count: int


@dataclass(frozen=True)
class CellReport:
    """Aggregates of one (algorithm, parameters) cell over a corpus."""

    config: AlgorithmConfig
    scores: tuple[DocumentScore, ...]
    errors: tuple[tuple[str, str], ...] = ()  # (doc_id, error description)

    @property
    def macro_precision(self) -> float:
        if not self.scores:
            return 0.0
        return sum(s.precision for s in self.scores) / len(self.scores)

    @property
    def macro_distance_error_km(self) -> float:
        if not self.scores:
            return 0.0
        return sum(s.avg_distance_error_km for s in self.scores) / len(self.scores)


@dataclass(frozen=True)
class CorpusReport:
    cells: tuple[CellReport, ...]
    best_by_algorithm: dict[str, str] = field(default_factory=dict)  # algorithm -> cell key


def score_document(result: DisambiguationResult, doc: DocumentInput) -> DocumentScore:
    """Score one result against the document's ground truth."""
    if not doc.ground_truth:
        raise MissingTruthError(f"document {doc.doc_id!r} has no ground truth")
    truth = doc.ground_truth
    locations = {c.entry_id: c.location for m in doc.mentions for c in m.candidates}

    correct = 0
    resolved = 0
    failed = 0
    errors_km: list[float] = []
    for mention in doc.mentions:
        outcome = result.outcomes[mention.name]
        if not outcome.resolved:
            failed += 1
            continue
        resolved += 1
        true_entry = truth.get(mention.name)
        if true_entry is None:
            continue
        if outcome.entry_id == true_entry:
            correct += 1
        errors_km.append(
            haversine(locations[outcome.entry_id], locations[true_entry]) / 1000.0
        )
    truth_count = len(truth)
    return DocumentScore(
        doc_id=doc.doc_id,
        precision=correct / truth_count,
        avg_distance_error_km=sum(errors_km) / len(errors_km) if errors_km else 0.0,
        resolved_count=resolved,
        failed_count=failed,
        truth_count=truth_count,
        correct_count=correct,
    )


def run_algorithm(doc: DocumentInput, config: AlgorithmConfig) -> DisambiguationResult:
    """Run one configured algorithm (density pipeline or a baseline)."""
    params = config.param_dict
    if config.algorithm == "densityk":
        return densityk_pipeline(
            doc,
            delta_d=float(params.get("delta_d", DEFAULT_DELTA_D_M)),
            upper_bound=params.get("upper_bound"),
        )
    baseline = BaselineConfig(
        algorithm=config.algorithm,
        epsilon=float(params["epsilon"]) if "epsilon" in params else None,
        min_pts=int(params["min_pts"]) if "min_pts" in params else None,
        k=int(params["k"]) if "k" in params else None,
        omd_measure=str(params.get("measure", "avg_pairwise")),
        combination_cap=int(params.get("cap", BaselineConfig.combination_cap)),
    )
    return run_baseline(doc, baseline)


def _evaluate_cell(
    docs: list[DocumentInput], config: AlgorithmConfig, workers: int
) -> CellReport:
    def one(doc: DocumentInput):
        try:
            return score_document(run_algorithm(doc, config), doc), None
        except DensityKError as exc:
            return None, (doc.doc_id, f"{type(exc).__name__}: {exc}")

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, docs))
    else:
        results = [one(doc) for doc in docs]

    scores = tuple(score for score, _ in results if score is not None)
    errors = tuple(err for _, err in results if err is not None)
    return CellReport(config=config, scores=scores, errors=errors)


def evaluate_corpus(
    docs: list[DocumentInput],
    configs: list[AlgorithmConfig],
    workers: int = 1,
) -> CorpusReport:
    """Run every configured cell over the corpus and pick each algorithm's
    best cell (highest macro precision, ties to the lower distance error).

    Per-document algorithm errors are recorded as cell annotations; they
    never abort the run. Output is keyed by configuration, so worker count
    and completion order cannot change the report.
    """
    docs = sorted(docs, key=lambda d: d.doc_id)
    cells = tuple(_evaluate_cell(docs, config, workers) for config in configs)

    best: dict[str, str] = {}
    best_key: dict[str, tuple[float, float]] = {}
    for cell in cells:
        algo = cell.config.algorithm
        key = (-cell.macro_precision, cell.macro_distance_error_km)
        if algo not in best or key < best_key[algo]:
            best[algo] = cell.config.key
            best_key[algo] = key
    return CorpusReport(cells=cells, best_by_algorithm=best)


def table1_grid() -> list[AlgorithmConfig]:
    """The benchmark parameter grid: every tested epsilon/MinPts/k value,
    plus the parameterless algorithms."""
    configs: list[AlgorithmConfig] = [AlgorithmConfig("densityk", (("delta_d", 100.0),))]
    for epsilon in (200.0, 2000.0, 20000.0):
        for min_pts in (1, 5, 10):
            configs.append(
                AlgorithmConfig("dbscan", (("epsilon", epsilon), ("min_pts", min_pts)))
            )
    for k in (5, 10, 25):
        for min_pts in (1, 5, 10):
            configs.append(AlgorithmConfig("kdist", (("k", k), ("min_pts", min_pts))))
    configs.append(AlgorithmConfig("omd", (("measure", "avg_pairwise"),)))
    configs.append(AlgorithmConfig("centroid"))
    configs.append(AlgorithmConfig("dtur"))
    return configs


GRID_PRESETS = {"table1": table1_grid}


def report_to_dict(report: CorpusReport) -> dict:
    return {
        "cells": [
            {
                "algorithm": cell.config.algorithm,
                "params": cell.config.param_dict,
                "key": cell.config.key,
                "macro_precision": cell.macro_precision,
                "macro_distance_error_km": cell.macro_distance_error_km,
                "documents": [
                    {
                        "doc_id": s.doc_id,
                        "precision": s.precision,
                        "avg_distance_error_km": s.avg_distance_error_km,
                        "resolved": s.resolved_count,
                        "failed": s.failed_count,
                        "truth_count": s.truth_count,
                        "correct": s.correct_count,
                    }
                    for s in cell.scores
                ],
                "errors": [
                    {"doc_id": doc_id, "error": message} for doc_id, message in cell.errors
                ],
            }
            for cell in report.cells
        ],
        "best_by_algorithm": dict(sorted(report.best_by_algorithm.items())),
    }


def report_to_csv(report: CorpusReport) -> str:
    """One row per configuration and document."""
    lines = ["doc_id,algorithm,params,precision,avg_distance_error_km,resolved,failed"]
    for cell in report.cells:
        params = ";".join(f"{k}={v}" for k, v in cell.config.params)
        for s in cell.scores:
            lines.append(
                f"{s.doc_id},{cell.config.algorithm},{params},{s.precision!r},"
                f"{s.avg_distance_error_km!r},{s.resolved_count},{s.failed_count}"
            )
    return "\n".join(lines) + "\n"
