"""tilecut: exact topological analysis of integral self-affine tiles.

Decides neighbor sets, connectivity, single-point piece intersections and
machine-checkable cut-point certificates for lattice IFS attractors, using
integer and rational arithmetic only.
"""

from .errors import TilecutError
from .exact import det, expansion_certificate, in_lattice_image, periodic_point, solve_rational
from .hata import HataLevel, Partition, children, components_without, is_connected, level_vertices, separates
from .intersections import (
    IntersectionClass,
    classify_all,
    classify_intersection,
    e_criterion_holds,
    single_point_translates,
)
from .neighbors import NeighborGraph, candidate_set, neighbor_graph, neighbor_set
from .system import RationalBox, TileSystem, ValidationReport, bounding_box, parse_spec, validate

__all__ = [
    "TilecutError",
    "det",
    "expansion_certificate",
    "in_lattice_image",
    "periodic_point",
    "solve_rational",
    "HataLevel",
    "Partition",
    "children",
    "components_without",
    "is_connected",
    "level_vertices",
    "separates",
    "IntersectionClass",
    "classify_all",
    "classify_intersection",
    "e_criterion_holds",
    "single_point_translates",
    "NeighborGraph",
    "candidate_set",
    "neighbor_graph",
    "neighbor_set",
    "RationalBox",
    "TileSystem",
    "ValidationReport",
    "bounding_box",
    "parse_spec",
    "validate",
]

__version__ = "0.1.0"
