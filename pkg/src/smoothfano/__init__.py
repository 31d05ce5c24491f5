"""Classification of smooth Fano polytopes up to lattice isomorphism."""

from .checksubset import DeducedFacets, Rejected, check_subset
from .geometry import (AmbiguityError, FanoPolytope, NotFoundError, RejectError, build_polytope,
                       neighbor_apex, special_facets, transition_height)
from .lattice import Simplex, UnimodularityError, build_simplex, change_basis, is_primitive, pairing
from .order import (cmp_point_sets, cmp_points, is_presubset, is_sd_minimal, ord_polytope, permute,
                    sort_points)
from .sfp import Stats, classify, iter_classify
from .wd import generate_wd, points_after

__all__ = [
    "AmbiguityError", "DeducedFacets", "FanoPolytope", "NotFoundError", "RejectError", "Rejected",
    "Simplex", "Stats", "UnimodularityError", "build_polytope", "build_simplex", "change_basis",
    "check_subset", "classify", "cmp_point_sets", "cmp_points", "generate_wd", "is_presubset",
    "is_primitive", "is_sd_minimal", "iter_classify", "neighbor_apex", "ord_polytope", "pairing",
    "permute", "points_after", "sort_points", "special_facets", "transition_height",
]
