"""Sample-point lattices: concentric circles and Archimedean spirals.

Both lattices are anchored on a shape centroid and emit points in
(cycle, angle) lexicographic order. Angle zero points along +x; the image
y axis points down, so increasing angles run counter-clockwise on screen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .shape_io import Centroid

KIND_CIRCULAR = "circular"
KIND_SPIRAL = "spiral"
KINDS = (KIND_CIRCULAR, KIND_SPIRAL)


@dataclass(frozen=True)
class RasterSpec:
    """Lattice parameters: kind, radial separation d, samples per cycle s."""

    kind: str
    separation_px: int
    samples_per_cycle: int

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        for name in ("separation_px", "samples_per_cycle"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
            object.__setattr__(self, name, int(value))


@dataclass(frozen=True)
class SamplePoint:
    x: float
    y: float
    cycle_index: int
    angle_index: int


@dataclass(frozen=True, eq=False)
class RasterGrid:
    """Materialized lattice: parallel point arrays in (cycle, angle) order."""

    spec: RasterSpec
    center: Centroid
    n_cycles: int
    xs: np.ndarray
    ys: np.ndarray
    radii: np.ndarray
    cycle_indices: np.ndarray
    angle_indices: np.ndarray

    def __len__(self) -> int:
        return int(self.xs.size)

    @property
    def points(self) -> list[SamplePoint]:
        return [
            SamplePoint(float(x), float(y), int(k), int(j))
            for x, y, k, j in zip(self.xs, self.ys, self.cycle_indices, self.angle_indices)
        ]


def unit_circle_samples(samples: int) -> tuple[np.ndarray, np.ndarray]:
    """(cos, sin) of 2*pi*j/samples for j = 0..samples-1.

    The angle is folded into a quarter turn before evaluating, so samples
    that land on the axes come out exactly (+-1, 0) / (0, +-1), and when 4
    divides ``samples`` a quarter-turn rotation of the sample set is an
    exact permutation of the returned values.
    """
    j = np.arange(samples)
    quadrant, rem = np.divmod(4 * j, samples)
    base = (math.pi / 2.0) * (rem / samples)
    c, s = np.cos(base), np.sin(base)
    cos = np.choose(quadrant, (c, -s, -c, s))
    sin = np.choose(quadrant, (s, c, -s, -c))
    return cos, sin


def lattice(kind: str, separation: float, samples: int, n_cycles: int):
    """Low-level sampler: (radii, cos, sin, cycle_idx, angle_idx) arrays.

    ``separation`` may be fractional here; the public grid builders pass the
    integer separation from a RasterSpec, the scale-normalized descriptor
    mode passes r_max / n_cycles.
    """
    separation = float(separation)
    cos, sin = unit_circle_samples(samples)
    k = np.repeat(np.arange(n_cycles), samples)
    j = np.tile(np.arange(samples), n_cycles)
    if kind == KIND_CIRCULAR:
        radii = (k + 1) * separation
    elif kind == KIND_SPIRAL:
        # rho = d*(k + j/s), one division so dyadic sample counts stay exact
        radii = separation * (k * samples + j) / samples
    else:
        raise ValueError(f"unknown raster kind {kind!r}")
    return radii, cos[j], sin[j], k, j


def cycle_count(spec: RasterSpec, r_max: float) -> int:
    """Cycles needed for the lattice to reach radius ``r_max``.

    Circles sit at radii (k+1)*d, so ceil(r/d) circles reach the boundary.
    Spiral turn k spans [k*d, (k+1)*d), so one extra turn is needed for its
    samples to reach the boundary radius. Degenerate single-pixel shapes
    still get one cycle.
    """
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    n = math.ceil(r_max / spec.separation_px)
    if spec.kind == KIND_SPIRAL:
        n += 1
    return max(1, n)


def _build(spec: RasterSpec, center: Centroid, n_cycles: int) -> RasterGrid:
    radii, cos, sin, k, j = lattice(spec.kind, spec.separation_px,
                                    spec.samples_per_cycle, n_cycles)
    xs = center.cx + radii * cos
    ys = center.cy - radii * sin
    for arr in (xs, ys, radii, k, j):
        arr.flags.writeable = False
    return RasterGrid(spec, center, int(n_cycles), xs, ys, radii, k, j)


def circular_grid(center: Centroid, spec: RasterSpec, n_cycles: int) -> RasterGrid:
    """Concentric circles at radii (k+1)*d with s samples per circle."""
    if spec.kind != KIND_CIRCULAR:
        raise ValueError(f"circular_grid needs a circular spec, got {spec.kind!r}")
    if n_cycles < 0:
        raise ValueError("n_cycles must be non-negative")
    return _build(spec, center, n_cycles)


def spiral_grid(center: Centroid, spec: RasterSpec, n_cycles: int) -> RasterGrid:
    """Archimedean spiral: radius d*(k + j/s) at angle 2*pi*j/s."""
    if spec.kind != KIND_SPIRAL:
        raise ValueError(f"spiral_grid needs a spiral spec, got {spec.kind!r}")
    if n_cycles < 0:
        raise ValueError("n_cycles must be non-negative")
    return _build(spec, center, n_cycles)
