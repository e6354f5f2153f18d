"""Raster-based shape vectors and a retrieval benchmark harness.

Shapes are described by counting lattice sample points (concentric circles
or an Archimedean spiral, anchored at the centroid) that land on the
shape, grouped per cycle, per radial line, or per spiral segment. The
matcher and evaluation modules reproduce a leave-self-out top-k retrieval
protocol over those vectors, including parameter sweeps and an occlusion
robustness experiment.
"""

from .descriptor import (
    CENTER_TOLERANCE,
    CIRC_ANGULAR,
    CIRC_RADIAL,
    SPIRAL_FIXED,
    SPIRAL_FULL,
    VARIANT_KIND,
    VARIANTS,
    ShapeVector,
    angular_vector,
    circular_radial_vector,
    extract,
    extract_normalized,
    spiral_fixed_angle_vector,
    spiral_full_cycle_vector,
)
from .errors import (
    DatabaseFormatError,
    DatasetError,
    EmptyDatabaseError,
    EmptyShapeError,
    IncompatibleVectorError,
    MisalignmentError,
    PnmFormatError,
    RasterShapeError,
)
from .evaluation import (
    DEFAULT_K,
    DEFAULT_SAMPLES,
    DEFAULT_SEPARATIONS,
    STANDARD_OCCLUSION_CONFIGS,
    OcclusionCell,
    OcclusionReport,
    SweepCell,
    SweepReport,
    occlusion_experiment,
    read_sweep_csv,
    retrieval_efficiency,
    select_occlusion_queries,
    sweep,
    timed_retrieval,
    write_occlusion_csv,
    write_sweep_csv,
)
from .matcher import (
    DescriptorDatabase,
    DescriptorRecord,
    Match,
    distance,
    load_database,
    query,
    save_database,
)
from .raster import (
    KIND_CIRCULAR,
    KIND_SPIRAL,
    KINDS,
    RasterGrid,
    RasterSpec,
    SamplePoint,
    circular_grid,
    cycle_count,
    spiral_grid,
    unit_circle_samples,
)
from .shape_io import (
    BinaryShape,
    Centroid,
    category_of,
    centroid,
    contains,
    contains_points,
    load_directory,
    load_image,
    max_radius,
    occlude,
    round_half_away,
    save_image,
)

__version__ = "0.1.0"
