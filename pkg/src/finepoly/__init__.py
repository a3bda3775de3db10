"""Exact Fine interiors, minimal multipliers and F-hollow classification of
lattice polytopes."""

from .fine import candidate_set, fine_interior, hilbert_basis, support_set
from .lattice_maps import (ProjectionMap, affine_normal_form, apply_projection, lattice_width,
                           unimodular_equivalent)
from .multiplier import (canonical_fano, canonical_projection, classify, kodaira_dimension,
                         minimal_multiplier, sporadicity_check)
from .polytope import LatticePolytope, Polytope, convex_hull, polar_dual

__all__ = [
    "LatticePolytope", "Polytope", "ProjectionMap", "affine_normal_form", "apply_projection",
    "candidate_set", "canonical_fano", "canonical_projection", "classify", "convex_hull",
    "fine_interior", "hilbert_basis", "kodaira_dimension", "lattice_width",
    "minimal_multiplier", "polar_dual", "sporadicity_check", "support_set",
    "unimodular_equivalent",
]
