"""Acceptance gate: one criterion per test, one printed PASS/FAIL line each.

Lines are written past pytest's capture so the verdicts always appear in
the run log. Every criterion carries its runtime budget; a budget overrun
fails the criterion like any other property violation.
"""

from __future__ import annotations

import sys
import time

import numpy as np
import pytest

from densityk import (
    AlgorithmConfig,
    MentionOutcome,
    OutcomeStatus,
    compute_circular_k_function,
    compute_k_function,
    dbscan,
    densityk_pipeline,
    derive_cluster_distance,
    disambiguate,
    evaluate_corpus,
    form_clusters,
    kdist_epsilon,
    omd,
    pairwise_distances,
    rank_clusters,
    score_document,
    table1_grid,
    to_point_cloud,
)
from densityk.clustering import DisambiguationResult
from densityk.evaluation import report_to_dict
from densityk.export import to_canonical_json
from densityk.synth import SynthSpec
from conftest import make_cloud, make_document, random_coords
from oracles import (
    annular_density_curve,
    exhaustive_min_combination,
    label_propagation_components,
    reference_dbscan,
    slow_haversine,
    two_sigma_threshold_distance,
)
from test_corpus import M_PER_DEG


def _report(number: int, title: str, ok: bool, detail: str) -> None:
    verdict = "PASS" if ok else "FAIL"
    print(
        f"[criterion {number:02d}] {verdict} — {title}: {detail}",
        file=sys.__stdout__,
        flush=True,
    )
    assert ok, f"criterion {number}: {detail}"


def _partition(clusters) -> set[frozenset[str]]:
    return {frozenset(p.entry_id for p in c.members) for c in clusters}


def test_criterion_01_threshold_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(1001)
    mismatches = []
    for case in range(10):
        n = int(rng.integers(20, 201))
        coords = random_coords(rng, n)
        cloud = make_cloud(coords)
        distances = pairwise_distances([p.location for p in cloud.points])
        ours = derive_cluster_distance(compute_k_function(distances, n, 100.0))
        flat = [
            slow_haversine(*coords[i], *coords[j])
            for i in range(n)
            for j in range(i + 1, n)
        ]
        oracle = two_sigma_threshold_distance(annular_density_curve(flat, n, 100.0))
        if ours != oracle:
            mismatches.append((case, ours, oracle))
    elapsed = time.perf_counter() - start
    ok = not mismatches and elapsed < 5.0
    _report(
        1,
        "threshold equals literal density-curve oracle",
        ok,
        f"{10 - len(mismatches)}/10 clouds exact, {elapsed:.2f}s (< 5s)",
    )


def test_criterion_02_single_linkage_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(1002)
    exact = 0
    for _ in range(200):
        n = int(rng.integers(5, 101))
        coords = random_coords(rng, n)
        threshold = float(rng.uniform(1e3, 5e6))
        ours = {
            frozenset(int(p.entry_id[1:]) for p in c.members)
            for c in form_clusters(make_cloud(coords), threshold)
        }
        if ours == set(label_propagation_components(coords, threshold)):
            exact += 1
    elapsed = time.perf_counter() - start
    ok = exact == 200 and elapsed < 10.0
    _report(
        2,
        "single-linkage partitions equal the brute-force oracle",
        ok,
        f"{exact}/200 cases exact, {elapsed:.2f}s (< 10s)",
    )


def test_criterion_03_dbscan_oracle_and_reduction():
    start = time.perf_counter()
    rng = np.random.default_rng(1003)
    oracle_exact = 0
    reduction_exact = 0
    for _ in range(100):
        n = int(rng.integers(5, 60))
        coords = random_coords(rng, n)
        epsilon = float(rng.uniform(1e3, 2e6))
        min_pts = int(rng.integers(1, 7))
        cloud = make_cloud(coords)
        ours = {
            frozenset(int(p.entry_id[1:]) for p in c.members)
            for c in dbscan(cloud, epsilon, min_pts)
        }
        labels = reference_dbscan(coords, epsilon, min_pts)
        groups: dict[int, set[int]] = {}
        for i, lab in enumerate(labels):
            if lab != -1:
                groups.setdefault(lab, set()).add(i)
        if ours == {frozenset(g) for g in groups.values()}:
            oracle_exact += 1
        if _partition(dbscan(cloud, epsilon, 1)) == _partition(form_clusters(cloud, epsilon)):
            reduction_exact += 1
    elapsed = time.perf_counter() - start
    ok = oracle_exact == 100 and reduction_exact == 100 and elapsed < 10.0
    _report(
        3,
        "DBSCAN matches the reference oracle and min_pts=1 reduces to single linkage",
        ok,
        f"oracle {oracle_exact}/100, reduction {reduction_exact}/100, {elapsed:.2f}s (< 10s)",
    )


def test_criterion_04_omd_optimality():
    start = time.perf_counter()
    rng = np.random.default_rng(1004)
    exact = 0
    for trial in range(50):
        mentions = {
            f"m{i}": random_coords(rng, int(rng.integers(1, 5)))
            for i in range(int(rng.integers(2, 5)))
        }
        doc = make_document(f"a4-{trial}", mentions)
        combo, _ = exhaustive_min_combination([list(c) for c in mentions.values()])
        want = {f"m{i}": f"m{i}_e{idx}" for i, idx in enumerate(combo)}
        got = {name: o.entry_id for name, o in omd(doc).outcomes.items()}
        if got == want:
            exact += 1
    elapsed = time.perf_counter() - start
    ok = exact == 50 and elapsed < 5.0
    _report(
        4,
        "exhaustive minimum-distance selection is optimal and tie-consistent",
        ok,
        f"{exact}/50 instances exact, {elapsed:.2f}s (< 5s)",
    )


def _assignments(result: DisambiguationResult) -> dict[str, str | None]:
    return {
        name: (o.entry_id if o.resolved else None) for name, o in result.outcomes.items()
    }


def test_criterion_05_delta_d_insensitivity(default_corpus):
    start = time.perf_counter()
    matching = 0
    top_cluster_consistent = True
    for doc in default_corpus:
        runs = [densityk_pipeline(doc, delta_d=dd) for dd in (100.0, 250.0, 500.0)]
        asg = [_assignments(r) for r in runs]
        if asg[0] == asg[1] == asg[2]:
            matching += 1
            tops = [
                frozenset(p.entry_id for p in r.ranked_clusters[0].members) for r in runs
            ]
            if not (tops[0] == tops[1] == tops[2]):
                top_cluster_consistent = False
    elapsed = time.perf_counter() - start
    share = matching / len(default_corpus)
    ok = share >= 0.98 and top_cluster_consistent and elapsed < 30.0
    _report(
        5,
        "resolution is insensitive to the discretization step",
        ok,
        f"identical assignments on {matching}/{len(default_corpus)} docs "
        f"({share:.0%} >= 98%), top clusters consistent: {top_cluster_consistent}, "
        f"{elapsed:.1f}s (< 30s)",
    )


def test_criterion_06_planted_recovery(default_corpus):
    start = time.perf_counter()
    spec = SynthSpec()
    lo, hi = 2.0 * spec.context_radius, spec.min_decoy_separation
    densityk_scores = []
    dbscan_scores = []
    in_interval = 0
    for doc in default_corpus:
        result = densityk_pipeline(doc)
        densityk_scores.append(score_document(result, doc).precision)
        threshold = result.diagnostics.cluster_distance
        if lo < threshold < hi:
            in_interval += 1
        db = dbscan(to_point_cloud(doc), 20_000.0, 5)
        dbscan_scores.append(score_document(disambiguate(doc, rank_clusters(db)), doc).precision)
    macro = sum(densityk_scores) / len(densityk_scores)
    dbscan_macro = sum(dbscan_scores) / len(dbscan_scores)
    elapsed = time.perf_counter() - start
    ok = (
        macro == 1.0
        and in_interval == len(default_corpus)
        and dbscan_macro <= macro
        and elapsed < 60.0
    )
    _report(
        6,
        "planted ground truth is perfectly recovered",
        ok,
        f"macro precision {macro:.3f} (need 1.000), threshold in "
        f"({lo:.0f} m, {hi:.0f} m) on {in_interval}/{len(default_corpus)} docs, "
        f"dbscan {dbscan_macro:.3f} <= densityk: {dbscan_macro <= macro}, "
        f"{elapsed:.1f}s (< 60s)",
    )


def test_criterion_07_annular_not_above_circular(default_corpus):
    start = time.perf_counter()
    holds = 0
    for doc in default_corpus:
        cloud = to_point_cloud(doc)
        distances = pairwise_distances([p.location for p in cloud.points])
        annular = derive_cluster_distance(compute_k_function(distances, len(cloud), 100.0))
        circular = derive_cluster_distance(
            compute_circular_k_function(distances, len(cloud), 100.0)
        )
        if annular <= circular:
            holds += 1
    elapsed = time.perf_counter() - start
    ok = holds == len(default_corpus) and elapsed < 30.0
    _report(
        7,
        "annular threshold never exceeds the circular variant",
        ok,
        f"holds on {holds}/{len(default_corpus)} docs (need all), {elapsed:.1f}s (< 30s)",
    )


def test_criterion_08_kdist_dominates_cluster_distance(default_corpus):
    start = time.perf_counter()
    holds = 0
    for doc in default_corpus:
        cloud = to_point_cloud(doc)
        distances = pairwise_distances([p.location for p in cloud.points])
        threshold = derive_cluster_distance(compute_k_function(distances, len(cloud), 100.0))
        if kdist_epsilon(cloud, k=5) > threshold:
            holds += 1
    elapsed = time.perf_counter() - start
    ok = holds == len(default_corpus) and elapsed < 30.0
    _report(
        8,
        "k-dist epsilon exceeds the derived cluster distance",
        ok,
        f"holds on {holds}/{len(default_corpus)} docs (need all), {elapsed:.1f}s (< 30s)",
    )


def test_criterion_09_metric_fixtures():
    start = time.perf_counter()

    def resolved(eid):
        return MentionOutcome(OutcomeStatus.RESOLVED, entry_id=eid)

    failed = MentionOutcome(OutcomeStatus.AMBIGUOUS_IN_TOP_CLUSTER)

    def result_for(doc, outcomes):
        return DisambiguationResult(doc_id=doc.doc_id, outcomes=outcomes, ranked_clusters=())

    checks = []

    doc = make_document(
        "f1", {n: [(0, 0), (5, 5)] for n in "ab"}, ground_truth={n: f"{n}_e0" for n in "ab"}
    )
    s = score_document(result_for(doc, {n: resolved(f"{n}_e0") for n in "ab"}), doc)
    checks.append(abs(s.precision - 1.0) <= 1e-9 and abs(s.avg_distance_error_km) <= 1e-9)

    doc = make_document(
        "f2",
        {n: [(0, 0), (5, 5)] for n in "abcd"},
        ground_truth={n: f"{n}_e0" for n in "abcd"},
    )
    outcomes = {n: resolved(f"{n}_e0") for n in "abc"}
    outcomes["d"] = failed
    s = score_document(result_for(doc, outcomes), doc)
    checks.append(abs(s.precision - 0.75) <= 1e-9)

    doc = make_document(
        "f3",
        {
            "a": [(0, 0), (0, 1000 / M_PER_DEG)],
            "b": [(10, 10), (10 + 3000 / M_PER_DEG, 10)],
        },
        ground_truth={"a": "a_e0", "b": "b_e0"},
    )
    s = score_document(result_for(doc, {"a": resolved("a_e1"), "b": resolved("b_e1")}), doc)
    checks.append(abs(s.avg_distance_error_km - 2.0) <= 1e-9)

    elapsed = time.perf_counter() - start
    ok = all(checks) and elapsed < 1.0
    _report(
        9,
        "scoring reproduces the hand-computed fixtures",
        ok,
        f"{sum(checks)}/3 fixtures exact to 1e-9, {elapsed:.2f}s (< 1s)",
    )


def test_criterion_10_evaluation_determinism(default_corpus):
    start = time.perf_counter()
    grid = table1_grid()

    def run(workers):
        report = evaluate_corpus(list(default_corpus), grid, workers=workers)
        return to_canonical_json(report_to_dict(report))

    first = run(1)
    second = run(1)
    threaded = run(8)
    elapsed = time.perf_counter() - start
    ok = first == second == threaded and elapsed < 120.0
    _report(
        10,
        "grid evaluation is byte-identical across reruns and worker counts",
        ok,
        f"rerun identical: {first == second}, workers 1 vs 8 identical: "
        f"{first == threaded}, {elapsed:.1f}s (< 120s)",
    )
