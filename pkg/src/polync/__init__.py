"""Exact combinatorics of polysimplicial complexes and multiparameter Kulikov models."""

from polync.coloring import Coloring, FactorSlot, canonical_coloring, check_coloring, forced_classes, is_colorable
from polync.complex import (
    FaceIncidence,
    Polysimplex,
    PolysimplicialComplex,
    SurfaceType,
    classify,
    euler_characteristic,
    euler_relations_check,
    validate,
)
from polync.generators import generate
from polync.geometry import EdgeLabeling, check_triple_point_formula, component_charge, total_charge_check
from polync.lattice import PeriodHom, build_component, check_d_semistable, numerically_cartier, slab_class
from polync.monodromy import basechange_triangle_count, exact_determinant, exact_signature, gram_matrix
from polync.resolution import snc_resolution, subdivide_square
from polync.slabs import parameter_count, slab_count_identity, slabs

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "EdgeLabeling",
    "FaceIncidence",
    "FactorSlot",
    "PeriodHom",
    "Polysimplex",
    "PolysimplicialComplex",
    "SurfaceType",
    "basechange_triangle_count",
    "build_component",
    "canonical_coloring",
    "check_coloring",
    "check_d_semistable",
    "check_triple_point_formula",
    "classify",
    "component_charge",
    "euler_characteristic",
    "euler_relations_check",
    "exact_determinant",
    "exact_signature",
    "forced_classes",
    "generate",
    "gram_matrix",
    "is_colorable",
    "numerically_cartier",
    "parameter_count",
    "slab_class",
    "slab_count_identity",
    "slabs",
    "snc_resolution",
    "subdivide_square",
    "total_charge_check",
    "validate",
]
