"""Descriptor databases and Euclidean top-k retrieval.

Databases are plain line-oriented text files (RASTERDB v1) holding one
labeled vector per record. Retrieval is an exact linear scan: datasets
here are a few hundred to a few thousand records and the benchmark
harness times exactly this scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .descriptor import VARIANT_KIND, VARIANTS, ShapeVector
from .errors import DatabaseFormatError, EmptyDatabaseError, IncompatibleVectorError
from .raster import RasterSpec

FORMAT_NAME = "RASTERDB"
FORMAT_VERSION = "v1"


@dataclass(frozen=True, eq=False)
class DescriptorRecord:
    id: str
    category: str
    vector: ShapeVector


@dataclass(frozen=True, eq=False)
class DescriptorDatabase:
    """Immutable collection of records sharing one spec and variant."""

    spec: RasterSpec
    variant: str
    records: tuple[DescriptorRecord, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        seen = set()
        for rec in self.records:
            if rec.id in seen:
                raise ValueError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
            if rec.vector.variant != self.variant or rec.vector.spec != self.spec:
                raise ValueError(
                    f"record {rec.id!r} was extracted under a different spec/variant"
                )

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class Match:
    id: str
    category: str
    distance: float


def _euclidean(a: np.ndarray, b: np.ndarray) -> float:
    # implicit zero-padding: missing trailing cycles hold no shape samples
    n = min(a.size, b.size)
    head = a[:n] - b[:n]
    d2 = float(head @ head)
    tail = a[n:] if a.size > n else b[n:]
    if tail.size:
        d2 += float(tail @ tail)
    return math.sqrt(d2)


def distance(a: ShapeVector, b: ShapeVector) -> float:
    """Euclidean distance; the shorter vector is zero-padded to the longer."""
    if a.variant != b.variant or a.spec != b.spec:
        raise IncompatibleVectorError(
            f"cannot compare {a.variant}/{a.spec} with {b.variant}/{b.spec}"
        )
    return _euclidean(a.values, b.values)


def query(db: DescriptorDatabase, q: ShapeVector, k: int,
          exclude_id: str | None = None) -> list[Match]:
    """The k records nearest to ``q``, ascending by distance.

    Ties keep database insertion order. ``exclude_id`` drops one record
    (used for leave-self-out evaluation). Returns fewer than k matches only
    when the database, after exclusion, is smaller than k.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if q.variant != db.variant or q.spec != db.spec:
        raise IncompatibleVectorError(
            f"query is {q.variant}/{q.spec}, database is {db.variant}/{db.spec}"
        )
    candidates = [r for r in db.records if r.id != exclude_id]
    if not candidates:
        raise EmptyDatabaseError("no records to query (database empty after exclusion)")
    dists = [_euclidean(q.values, r.vector.values) for r in candidates]
    order = sorted(range(len(candidates)), key=dists.__getitem__)
    return [Match(candidates[i].id, candidates[i].category, dists[i]) for i in order[:k]]


def _header_line(db: DescriptorDatabase) -> str:
    return (f"{FORMAT_NAME} {FORMAT_VERSION} kind={db.spec.kind} variant={db.variant} "
            f"sep={db.spec.separation_px} samples={db.spec.samples_per_cycle}")


def save_database(db: DescriptorDatabase, path) -> None:
    """Write the database as RASTERDB v1 text, values at 6 decimals."""
    lines = [_header_line(db)]
    for rec in db.records:
        values = ",".join(f"{v:.6f}" for v in rec.vector.values)
        lines.append(f"{rec.id}\t{rec.category}\t{len(rec.vector)}\t{values}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_database(path) -> DescriptorDatabase:
    """Read a RASTERDB v1 file written by save_database()."""
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise DatabaseFormatError(f"{path.name}: empty file")
    head = lines[0].split()
    if not head or head[0] != FORMAT_NAME:
        raise DatabaseFormatError(f"{path.name}: not a descriptor database: {lines[0][:60]!r}")
    if len(head) < 2 or head[1] != FORMAT_VERSION:
        version = head[1] if len(head) > 1 else "(missing)"
        raise DatabaseFormatError(
            f"{path.name}: unsupported format version {version!r} (expected {FORMAT_VERSION})"
        )
    fields = {}
    for part in head[2:]:
        key, sep, value = part.partition("=")
        if not sep:
            raise DatabaseFormatError(f"{path.name}: bad header field {part!r}")
        fields[key] = value
    try:
        kind = fields["kind"]
        variant = fields["variant"]
        spec = RasterSpec(kind, int(fields["sep"]), int(fields["samples"]))
    except (KeyError, ValueError) as exc:
        raise DatabaseFormatError(f"{path.name}: bad header: {exc}") from exc
    if variant not in VARIANTS or VARIANT_KIND[variant] != kind:
        raise DatabaseFormatError(f"{path.name}: variant {variant!r} does not match kind {kind!r}")

    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise DatabaseFormatError(f"{path.name}:{lineno}: expected 4 fields, got {len(parts)}")
        rec_id, rec_category, length_text, values_text = parts
        try:
            length = int(length_text)
            values = [float(v) for v in values_text.split(",")] if values_text else []
        except ValueError as exc:
            raise DatabaseFormatError(f"{path.name}:{lineno}: bad record: {exc}") from exc
        if length != len(values):
            raise DatabaseFormatError(
                f"{path.name}:{lineno}: declared {length} values, found {len(values)}"
            )
        vector = ShapeVector(variant, spec, np.array(values, dtype=float))
        records.append(DescriptorRecord(rec_id, rec_category, vector))
    return DescriptorDatabase(spec, variant, tuple(records))
