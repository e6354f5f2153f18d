"""The four raster shape vectors.

Each vector is a normalized count of lattice sample points that land on
foreground pixels, grouped per cycle (radial / full-cycle), per radial line
(angular), or per spiral arc segment (fixed-angle, one sample per segment).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MisalignmentError
from .raster import (
    KIND_CIRCULAR,
    KIND_SPIRAL,
    RasterGrid,
    RasterSpec,
    circular_grid,
    cycle_count,
    lattice,
    spiral_grid,
)
from .shape_io import BinaryShape, centroid, contains_points, max_radius

CIRC_RADIAL = "circ_radial"
CIRC_ANGULAR = "circ_angular"
SPIRAL_FULL = "spiral_full"
SPIRAL_FIXED = "spiral_fixed"
VARIANTS = (CIRC_RADIAL, CIRC_ANGULAR, SPIRAL_FULL, SPIRAL_FIXED)

VARIANT_KIND = {
    CIRC_RADIAL: KIND_CIRCULAR,
    CIRC_ANGULAR: KIND_CIRCULAR,
    SPIRAL_FULL: KIND_SPIRAL,
    SPIRAL_FIXED: KIND_SPIRAL,
}

CENTER_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class ShapeVector:
    """One descriptor: variant name, lattice spec, and normalized values.

    Values lie in [0, 1]. Length depends on the shape's extent for the
    per-cycle variants, so two shapes may produce different lengths under
    one spec; comparisons zero-pad the shorter vector (see matcher).
    """

    variant: str
    spec: RasterSpec
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise ValueError("values must be one-dimensional")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.size)


def _checked_inside(shape: BinaryShape, grid: RasterGrid, kind: str, variant: str) -> np.ndarray:
    if grid.spec.kind != kind:
        raise ValueError(f"{variant} requires a {kind} grid, got {grid.spec.kind!r}")
    c = centroid(shape)  # raises EmptyShapeError on empty masks
    if (abs(grid.center.cx - c.cx) > CENTER_TOLERANCE
            or abs(grid.center.cy - c.cy) > CENTER_TOLERANCE):
        raise MisalignmentError(
            f"grid center ({grid.center.cx:.8f}, {grid.center.cy:.8f}) is not the "
            f"centroid of shape {shape.id!r} ({c.cx:.8f}, {c.cy:.8f})"
        )
    return contains_points(shape, grid.xs, grid.ys)


def _grouped(variant: str, inside: np.ndarray, k: np.ndarray, j: np.ndarray,
             n_cycles: int, samples: int) -> np.ndarray:
    if variant in (CIRC_RADIAL, SPIRAL_FULL):
        return np.bincount(k[inside], minlength=n_cycles) / samples
    if variant == CIRC_ANGULAR:
        if n_cycles == 0:
            raise ValueError("angular vector needs at least one cycle")
        return np.bincount(j[inside], minlength=samples) / n_cycles
    return inside.astype(float)


def circular_radial_vector(shape: BinaryShape, grid: RasterGrid) -> ShapeVector:
    """Per-circle fraction of samples on the shape, innermost circle first."""
    inside = _checked_inside(shape, grid, KIND_CIRCULAR, CIRC_RADIAL)
    values = _grouped(CIRC_RADIAL, inside, grid.cycle_indices, grid.angle_indices,
                      grid.n_cycles, grid.spec.samples_per_cycle)
    return ShapeVector(CIRC_RADIAL, grid.spec, values)


def angular_vector(shape: BinaryShape, grid: RasterGrid) -> ShapeVector:
    """Per-radial-line fraction of samples on the shape, angle zero first."""
    inside = _checked_inside(shape, grid, KIND_CIRCULAR, CIRC_ANGULAR)
    values = _grouped(CIRC_ANGULAR, inside, grid.cycle_indices, grid.angle_indices,
                      grid.n_cycles, grid.spec.samples_per_cycle)
    return ShapeVector(CIRC_ANGULAR, grid.spec, values)


def spiral_full_cycle_vector(shape: BinaryShape, grid: RasterGrid) -> ShapeVector:
    """Per-turn fraction of spiral samples on the shape."""
    inside = _checked_inside(shape, grid, KIND_SPIRAL, SPIRAL_FULL)
    values = _grouped(SPIRAL_FULL, inside, grid.cycle_indices, grid.angle_indices,
                      grid.n_cycles, grid.spec.samples_per_cycle)
    return ShapeVector(SPIRAL_FULL, grid.spec, values)


def spiral_fixed_angle_vector(shape: BinaryShape, grid: RasterGrid) -> ShapeVector:
    """Per-arc-segment membership along the spiral, one sample per segment."""
    inside = _checked_inside(shape, grid, KIND_SPIRAL, SPIRAL_FIXED)
    return ShapeVector(SPIRAL_FIXED, grid.spec, inside.astype(float))


_VECTOR_OPS = {
    CIRC_RADIAL: circular_radial_vector,
    CIRC_ANGULAR: angular_vector,
    SPIRAL_FULL: spiral_full_cycle_vector,
    SPIRAL_FIXED: spiral_fixed_angle_vector,
}


def extract(shape: BinaryShape, spec: RasterSpec, variant: str) -> ShapeVector:
    """Full pipeline: centroid, extent, cycle count, grid, then the vector op."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if spec.kind != VARIANT_KIND[variant]:
        raise ValueError(
            f"variant {variant} needs a {VARIANT_KIND[variant]} raster, spec is {spec.kind}"
        )
    c = centroid(shape)
    n = cycle_count(spec, max_radius(shape, c))
    build = circular_grid if spec.kind == KIND_CIRCULAR else spiral_grid
    return _VECTOR_OPS[variant](shape, build(c, spec, n))


def extract_normalized(shape: BinaryShape, variant: str, n_cycles: int,
                       samples_per_cycle: int) -> np.ndarray:
    """Scale-normalized extraction: fixed cycle count, separation r_max/n.

    Every shape yields the same vector length under a given (n_cycles,
    samples_per_cycle), which makes the values roughly scale-invariant.
    The separation is fractional, so the result is a bare value array; it
    has no integer-pixel RasterSpec and cannot go into a descriptor
    database.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n_cycles < 1 or samples_per_cycle < 1:
        raise ValueError("n_cycles and samples_per_cycle must be positive")
    c = centroid(shape)
    separation = max_radius(shape, c) / n_cycles
    radii, cos, sin, k, j = lattice(VARIANT_KIND[variant], separation,
                                    samples_per_cycle, n_cycles)
    inside = contains_points(shape, c.cx + radii * cos, c.cy - radii * sin)
    return _grouped(variant, inside, k, j, n_cycles, samples_per_cycle)
