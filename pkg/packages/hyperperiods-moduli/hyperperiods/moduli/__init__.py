from .braid import Orbit, OrbitPoint, apply, burau, orbit_in_region
from .config import Settings
from .degenerate import Reduction, contract, face_lattice, reduce, zip_edge
from .enumerate import (
    enumerate_all_dims,
    enumerate_by_filter,
    enumerate_full_dim,
    full_dim_catalog,
)
from .errors import (
    AssemblyIncompleteError,
    BudgetExceededError,
    ExceptionalGraphError,
    HyperperiodsError,
    MalformedGraphError,
    OuterFaceError,
    PreconditionError,
    TargetOutsideImageError,
    UnsupportedError,
)
from .fiber import FiberComplex, Patch, TopologyReport, carve, fiber_report, glue, topology
from .graph import (
    PlanarTree,
    WeightAssignment,
    WeightMode,
    canonical_form,
    dim_coordinate_space,
    invariants,
    ord,
    validate_topology,
    validate_weights,
)
from .periods import (
    PeriodVector,
    image_polytope,
    local_fiber,
    period_map,
    period_matrix,
)
from .pipeline import build_fiber_graph, run_fiber_pipeline
from .serialization import load_graph, load_weights

__all__ = [
    "AssemblyIncompleteError",
    "BudgetExceededError",
    "ExceptionalGraphError",
    "FiberComplex",
    "HyperperiodsError",
    "MalformedGraphError",
    "Orbit",
    "OrbitPoint",
    "OuterFaceError",
    "Patch",
    "PeriodVector",
    "PlanarTree",
    "PreconditionError",
    "Reduction",
    "Settings",
    "TargetOutsideImageError",
    "TopologyReport",
    "UnsupportedError",
    "WeightAssignment",
    "WeightMode",
    "apply",
    "build_fiber_graph",
    "burau",
    "canonical_form",
    "carve",
    "contract",
    "dim_coordinate_space",
    "enumerate_all_dims",
    "enumerate_by_filter",
    "enumerate_full_dim",
    "face_lattice",
    "fiber_report",
    "full_dim_catalog",
    "glue",
    "image_polytope",
    "invariants",
    "load_graph",
    "load_weights",
    "local_fiber",
    "ord",
    "orbit_in_region",
    "period_map",
    "period_matrix",
    "reduce",
    "run_fiber_pipeline",
    "topology",
    "validate_topology",
    "validate_weights",
    "zip_edge",
]
