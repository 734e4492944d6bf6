"""Exact polytope geometry: the rational LP core and the predicates built on it."""

from tvlab.geometry.lp import (
    CertificateError,
    FarkasCertificate,
    LinearSystem,
    LPResult,
    lp_feasible,
    lp_stats,
    reset_lp_stats,
    system_from_dense,
)
from tvlab.geometry.objects import Flat, GeometryError, Instance, Polytope, realify
from tvlab.geometry.predicates import (
    affine_dependency_kernel,
    affine_rank,
    compute_shadow_set,
    flat_meets_polytope,
    hulls_of_unions_intersect,
    point_hulls_intersect,
    polytopes_intersect,
    unrealify,
)

__all__ = [
    "CertificateError",
    "FarkasCertificate",
    "Flat",
    "GeometryError",
    "Instance",
    "LPResult",
    "LinearSystem",
    "Polytope",
    "affine_dependency_kernel",
    "affine_rank",
    "compute_shadow_set",
    "flat_meets_polytope",
    "hulls_of_unions_intersect",
    "lp_feasible",
    "lp_stats",
    "point_hulls_intersect",
    "polytopes_intersect",
    "realify",
    "reset_lp_stats",
    "system_from_dense",
    "unrealify",
]
