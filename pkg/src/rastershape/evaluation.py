"""Retrieval-efficiency and timing experiments over descriptor databases.

The protocol: extract one descriptor per shape, store them in a database,
query every descriptor back against the database with its own record
excluded, and call a query recognized when a same-category record appears
among the top k matches. Efficiency is the recognized percentage; timing
measures the matching loop only (extraction and I/O excluded).
"""

from __future__ import annotations

import csv
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .descriptor import VARIANT_KIND, extract
from .errors import DatasetError
from .matcher import DescriptorDatabase, DescriptorRecord, query
from .raster import RasterSpec
from .shape_io import BinaryShape, occlude

DEFAULT_SEPARATIONS = (8, 16, 24, 32)
DEFAULT_SAMPLES = (4, 6, 8, 12, 24)
DEFAULT_K = 3

# the four configurations evaluated in the occlusion experiment
STANDARD_OCCLUSION_CONFIGS = (
    ("circ_radial", 24, 24),
    ("spiral_full", 32, 24),
    ("spiral_fixed", 24, 12),
    ("circ_angular", 16, 8),
)

SWEEP_CSV_COLUMNS = ("variant", "dataset", "separation", "samples",
                     "efficiency_pct", "total_time_s", "avg_time_s")
OCCLUSION_CSV_COLUMNS = ("variant", "separation", "samples", "efficiency_pct")


@dataclass(frozen=True)
class SweepCell:
    separation_px: int
    samples_per_cycle: int
    efficiency_pct: float
    total_time_s: float
    avg_time_s: float


@dataclass(frozen=True)
class SweepReport:
    variant: str
    dataset: str
    cells: tuple[SweepCell, ...]


@dataclass(frozen=True)
class OcclusionCell:
    variant: str
    separation_px: int
    samples_per_cycle: int
    efficiency_pct: float


@dataclass(frozen=True)
class OcclusionReport:
    fraction: float
    seed: int
    per_category: int
    cells: tuple[OcclusionCell, ...]


def _extract_records(shapes: Sequence[BinaryShape], spec: RasterSpec, variant: str,
                     threads: int = 1) -> list[DescriptorRecord]:
    def one(shape: BinaryShape) -> DescriptorRecord:
        try:
            return DescriptorRecord(shape.id, shape.category, extract(shape, spec, variant))
        except Exception as exc:
            raise DatasetError(f"extracting {shape.id!r}: {exc}") from exc

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, shapes))
    return [one(s) for s in shapes]


def retrieval_efficiency(db: DescriptorDatabase, queries: Sequence[DescriptorRecord],
                         k: int = DEFAULT_K, mode: str = "any") -> float:
    """Percentage of queries with a same-category record in their top k.

    Each query runs with its own id excluded, so database members can be
    used as their own test set. mode="any" counts a query as recognized
    when at least one same-category match appears; mode="precision" instead
    averages the same-category fraction of all k returned matches.
    """
    if mode not in ("any", "precision"):
        raise ValueError(f"mode must be 'any' or 'precision', got {mode!r}")
    if not queries:
        raise ValueError("no queries given")
    recognized = 0
    hits = 0
    for q in queries:
        matches = query(db, q.vector, k, exclude_id=q.id)
        same = sum(1 for m in matches if m.category == q.category)
        if same:
            recognized += 1
        hits += same
    if mode == "any":
        return 100.0 * recognized / len(queries)
    return 100.0 * hits / (k * len(queries))


def timed_retrieval(db: DescriptorDatabase, queries: Sequence[DescriptorRecord],
                    k: int = DEFAULT_K, mode: str = "any") -> tuple[float, float, float]:
    """(total_time_s, avg_time_s, efficiency_pct) for the full query loop.

    Runs one untimed warm-up pass, then times the query loop alone,
    single-threaded. Efficiency is scored from the timed results afterward.
    """
    if not queries:
        raise ValueError("no queries given")
    for q in queries:
        query(db, q.vector, k, exclude_id=q.id)
    start = time.perf_counter()
    results = [query(db, q.vector, k, exclude_id=q.id) for q in queries]
    total = time.perf_counter() - start

    recognized = 0
    hits = 0
    for q, matches in zip(queries, results):
        same = sum(1 for m in matches if m.category == q.category)
        if same:
            recognized += 1
        hits += same
    if mode == "any":
        efficiency = 100.0 * recognized / len(queries)
    else:
        efficiency = 100.0 * hits / (k * len(queries))
    return total, total / len(queries), efficiency


def sweep(dataset: Iterable[BinaryShape], variant: str,
          separations: Sequence[int] = DEFAULT_SEPARATIONS,
          samples: Sequence[int] = DEFAULT_SAMPLES,
          k: int = DEFAULT_K, dataset_label: str = "dataset",
          threads: int = 1, mode: str = "any",
          progress: Callable[[SweepCell], None] | None = None) -> SweepReport:
    """Leave-self-out retrieval over every (separation, samples) pair.

    Cells run sequentially so the timing columns do not interfere;
    extraction inside a cell may fan out over ``threads`` workers.
    """
    shapes = list(dataset)
    if not shapes:
        raise DatasetError("sweep needs a non-empty dataset")
    kind = VARIANT_KIND[variant]
    pairs = list(dict.fromkeys((int(d), int(s)) for d in separations for s in samples))
    cells = []
    for d, s in pairs:
        spec = RasterSpec(kind, d, s)
        records = _extract_records(shapes, spec, variant, threads)
        db = DescriptorDatabase(spec, variant, tuple(records))
        total, avg, efficiency = timed_retrieval(db, records, k, mode=mode)
        cell = SweepCell(d, s, efficiency, total, avg)
        cells.append(cell)
        if progress is not None:
            progress(cell)
    return SweepReport(variant, dataset_label, tuple(cells))


def select_occlusion_queries(dataset: Iterable[BinaryShape], per_category: int,
                             fraction: float, seed: int) -> list[BinaryShape]:
    """Occluded copies of the first ``per_category`` shapes of each category.

    Selection is by id order within each category; each copy gets its own
    cut direction derived from ``seed`` plus its position, so the whole set
    is reproducible from one seed.
    """
    groups: dict[str, list[BinaryShape]] = {}
    for shape in dataset:
        groups.setdefault(shape.category, []).append(shape)
    selected = []
    for cat in sorted(groups):
        members = sorted(groups[cat], key=lambda s: s.id)
        if len(members) < per_category:
            raise DatasetError(
                f"category {cat!r} has {len(members)} shapes, need {per_category}"
            )
        selected.extend(members[:per_category])
    return [occlude(shape, fraction, seed + i) for i, shape in enumerate(selected)]


def occlusion_experiment(dataset: Iterable[BinaryShape],
                         variant_specs: Sequence[tuple[str, int, int]] = STANDARD_OCCLUSION_CONFIGS,
                         per_category: int = 2, fraction: float = 0.2, seed: int = 0,
                         k: int = DEFAULT_K, threads: int = 1,
                         progress: Callable[[OcclusionCell], None] | None = None) -> OcclusionReport:
    """Retrieval efficiency of occluded queries against the clean database.

    The database holds every unoccluded shape; queries are the occluded
    copies (absent from the database, so nothing is excluded).
    """
    shapes = list(dataset)
    queries = select_occlusion_queries(shapes, per_category, fraction, seed)
    cells = []
    for variant, d, s in variant_specs:
        spec = RasterSpec(VARIANT_KIND[variant], int(d), int(s))
        records = _extract_records(shapes, spec, variant, threads)
        db = DescriptorDatabase(spec, variant, tuple(records))
        query_records = _extract_records(queries, spec, variant, threads)
        efficiency = retrieval_efficiency(db, query_records, k)
        cell = OcclusionCell(variant, int(d), int(s), efficiency)
        cells.append(cell)
        if progress is not None:
            progress(cell)
    return OcclusionReport(fraction, seed, per_category, tuple(cells))


def _open_for(dest, mode: str):
    if hasattr(dest, "write") or hasattr(dest, "read"):
        return dest, False
    return open(dest, mode, newline="", encoding="utf-8"), True


def write_sweep_csv(report: SweepReport, dest) -> None:
    """CSV with one row per cell: efficiency at 1 decimal, times at 3."""
    f, owned = _open_for(dest, "w")
    try:
        writer = csv.writer(f)
        writer.writerow(SWEEP_CSV_COLUMNS)
        for cell in report.cells:
            writer.writerow([
                report.variant, report.dataset,
                cell.separation_px, cell.samples_per_cycle,
                f"{cell.efficiency_pct:.1f}",
                f"{cell.total_time_s:.3f}",
                f"{cell.avg_time_s:.3f}",
            ])
    finally:
        if owned:
            f.close()


def read_sweep_csv(source) -> SweepReport:
    """Parse a CSV written by write_sweep_csv()."""
    f, owned = _open_for(source, "r")
    try:
        rows = list(csv.reader(f))
    finally:
        if owned:
            f.close()
    if not rows or tuple(rows[0]) != SWEEP_CSV_COLUMNS:
        raise ValueError("not a sweep report CSV (bad or missing header)")
    body = [row for row in rows[1:] if row]
    if not body:
        raise ValueError("sweep report CSV has no data rows")
    variants = {row[0] for row in body}
    datasets = {row[1] for row in body}
    if len(variants) != 1 or len(datasets) != 1:
        raise ValueError("sweep report CSV mixes variants or datasets")
    cells = tuple(
        SweepCell(int(row[2]), int(row[3]), float(row[4]), float(row[5]), float(row[6]))
        for row in body
    )
    return SweepReport(body[0][0], body[0][1], cells)


def write_occlusion_csv(report: OcclusionReport, dest) -> None:
    f, owned = _open_for(dest, "w")
    try:
        writer = csv.writer(f)
        writer.writerow(OCCLUSION_CSV_COLUMNS)
        for cell in report.cells:
            writer.writerow([
                cell.variant, cell.separation_px, cell.samples_per_cycle,
                f"{cell.efficiency_pct:.1f}",
            ])
    finally:
        if owned:
            f.close()
