"""Data model and file ingestion for candidate-annotated documents.

A document file is UTF-8 JSON of the shape::

    { "doc_id": str,
      "mentions": [ { "name": str,
                      "candidates": [ { "entry_id": str, "name": str,
                                        "lat": num, "lon": num,
                                        "source": str } ] } ],
      "ground_truth": { "<mention name>": "<entry_id>", ... }   # optional
    }

A corpus is either a directory of such files or a JSON-lines stream of
documents.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .errors import DocumentParseError, DocumentSchemaError
from .geo import GeoPoint, haversine

DEFAULT_DEDUPE_RADIUS_M = 50.0


@dataclass(frozen=True)
class CandidateEntry:
    """One ambiguous gazetteer entry for a place name."""

    entry_id: str
    name: str
    location: GeoPoint
    source: str


@dataclass(frozen=True)
class PlaceMention:
    """A surface place name with its non-empty candidate set."""

    name: str
    candidates: tuple[CandidateEntry, ...]


@dataclass(frozen=True)
class DocumentInput:
    """One description document: ordered mentions plus optional ground truth."""

    doc_id: str
    mentions: tuple[PlaceMention, ...]
    ground_truth: dict[str, str] | None = None


@dataclass(frozen=True)
class CloudPoint:
    """One candidate location with back-references to its mention and entry."""

    location: GeoPoint
    entry_id: str
    mention: str


@dataclass(frozen=True)
class PointCloud:
    """The locations of all candidates of a document, one point per candidate."""

    points: tuple[CloudPoint, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.points)


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise DocumentParseError(f"{context}: missing field '{key}'")
    return obj[key]


def document_from_dict(raw: dict) -> DocumentInput:
    """Build and validate a DocumentInput from already-parsed JSON."""
    if not isinstance(raw, dict):
        raise DocumentParseError("document must be a JSON object")
    doc_id = _require(raw, "doc_id", "document")
    mentions_raw = _require(raw, "mentions", f"document {doc_id!r}")
    if not isinstance(mentions_raw, list):
        raise DocumentParseError(f"document {doc_id!r}: 'mentions' must be a list")

    mentions: list[PlaceMention] = []
    seen_entry_ids: set[str] = set()
    for mraw in mentions_raw:
        ctx = f"document {doc_id!r}, mention {mraw.get('name', '?')!r}"
        name = _require(mraw, "name", ctx)
        cands_raw = _require(mraw, "candidates", ctx)
        if not isinstance(cands_raw, list) or len(cands_raw) == 0:
            raise DocumentSchemaError(f"{ctx}: candidate list is empty")
        candidates = []
        for craw in cands_raw:
            entry_id = _require(craw, "entry_id", ctx)
            lat = _require(craw, "lat", f"{ctx}, entry {entry_id!r}")
            lon = _require(craw, "lon", f"{ctx}, entry {entry_id!r}")
            try:
                location = GeoPoint(float(lat), float(lon))
            except (TypeError, ValueError) as exc:
                raise DocumentSchemaError(f"{ctx}, entry {entry_id!r}: {exc}") from exc
            if entry_id in seen_entry_ids:
                raise DocumentSchemaError(f"{ctx}: duplicate entry_id {entry_id!r}")
            seen_entry_ids.add(entry_id)
            candidates.append(
                CandidateEntry(
                    entry_id=entry_id,
                    name=craw.get("name", name),
                    location=location,
                    source=craw.get("source", ""),
                )
            )
        mentions.append(PlaceMention(name=name, candidates=tuple(candidates)))

    ground_truth = raw.get("ground_truth")
    if ground_truth is not None:
        by_name = {m.name: m for m in mentions}
        for gname, gentry in ground_truth.items():
            if gname not in by_name:
                raise DocumentSchemaError(
                    f"document {doc_id!r}: ground_truth key {gname!r} matches no mention"
                )
            if gentry not in {c.entry_id for c in by_name[gname].candidates}:
                raise DocumentSchemaError(
                    f"document {doc_id!r}: ground_truth for {gname!r} names unknown "
                    f"entry_id {gentry!r}"
                )
        ground_truth = dict(ground_truth)

    return DocumentInput(doc_id=doc_id, mentions=tuple(mentions), ground_truth=ground_truth)


def load_document(data: bytes | str) -> DocumentInput:
    """Parse one document from UTF-8 JSON bytes, enforcing all invariants."""
    try:
        raw = json.loads(data)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise DocumentParseError(f"malformed JSON: {exc}") from exc
    return document_from_dict(raw)


def load_document_file(path: str | Path) -> DocumentInput:
    return load_document(Path(path).read_bytes())


def load_corpus(path: str | Path) -> list[DocumentInput]:
    """Load a corpus from a directory of ``*.json`` files or a JSON-lines file.

    Directory entries are read in sorted filename order so corpus order is
    stable across platforms.
    """
    path = Path(path)
    docs: list[DocumentInput] = []
    if path.is_dir():
        for child in sorted(path.glob("*.json")):
            docs.append(load_document_file(child))
    else:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    docs.append(load_document(line))
    return docs


def document_to_dict(doc: DocumentInput) -> dict:
    """Serialize back to the document schema (field-for-field round trip)."""
    out: dict = {
        "doc_id": doc.doc_id,
        "mentions": [
            {
                "name": m.name,
                "candidates": [
                    {
                        "entry_id": c.entry_id,
                        "name": c.name,
                        "lat": c.location.lat,
                        "lon": c.location.lon,
                        "source": c.source,
                    }
                    for c in m.candidates
                ],
            }
            for m in doc.mentions
        ],
    }
    if doc.ground_truth is not None:
        out["ground_truth"] = dict(sorted(doc.ground_truth.items()))
    return out


def document_to_json(doc: DocumentInput) -> str:
    """Canonical serialization: sorted keys, no trailing whitespace drift."""
    return json.dumps(document_to_dict(doc), sort_keys=True, indent=1) + "\n"


def dedupe_candidates(
    mention: PlaceMention, radius: float = DEFAULT_DEDUPE_RADIUS_M
) -> PlaceMention:
    """Drop near-duplicate candidates, keeping the first of each group.

    Greedy first-survivor rule: a candidate is removed iff it lies within
    ``radius`` meters of an earlier survivor. Idempotent; survivor order is
    the input order.
    """
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    survivors: list[CandidateEntry] = []
    for cand in mention.candidates:
        if all(haversine(cand.location, s.location) > radius for s in survivors):
            survivors.append(cand)
    return PlaceMention(name=mention.name, candidates=tuple(survivors))


def to_point_cloud(doc: DocumentInput) -> PointCloud:
    """One cloud point per (mention, candidate) pair, in document order."""
    points = tuple(
        CloudPoint(location=c.location, entry_id=c.entry_id, mention=m.name)
        for m in doc.mentions
        for c in m.candidates
    )
    return PointCloud(points=points)


def iter_candidates(doc: DocumentInput) -> Iterator[tuple[PlaceMention, CandidateEntry]]:
    for m in doc.mentions:
        for c in m.candidates:
            yield m, c
