"""Exact checks on blow-ups of the plane, toric orbifolds and circle actions.

All arithmetic is over the integers or rationals.
"""
from .kernels import BACKEND
from .lattice import (DivisorClass, canonical_class, c1, esum, format_class, format_shorthand,
                      intersect, is_exceptional, parse_class)
from .weyl import (Cremona, LatticeMap, Permutation, dictionary, enumerate_exceptional, find_word,
                   verify_dictionary)
from .toric import Polytope2, FanCycle, affine_length, delta_lambda, hj_resolve, self_intersections
from .reduced import epsilon_class, homology_Z, min_area_exceptional, omega_class, euler_class
from .snf import smith_normal_form, cokernel
from .decompose import AdmissibilityProfile, enumerate_decompositions, is_admissible, profile
from .cubic import HomogeneousPoly, ProjPoint, nodal_cubic, parse_poly
from .hamiltonian import isotropy_spheres, slice_at, tolman_data, weight_sum_difference
from .report import VerificationReport, verify_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "DivisorClass", "canonical_class", "c1", "esum", "format_class", "format_shorthand",
    "intersect", "is_exceptional", "parse_class",
    "Cremona", "LatticeMap", "Permutation", "dictionary", "enumerate_exceptional", "find_word",
    "verify_dictionary",
    "Polytope2", "FanCycle", "affine_length", "delta_lambda", "hj_resolve", "self_intersections",
    "epsilon_class", "homology_Z", "min_area_exceptional", "omega_class", "euler_class",
    "smith_normal_form", "cokernel",
    "AdmissibilityProfile", "enumerate_decompositions", "is_admissible", "profile",
    "HomogeneousPoly", "ProjPoint", "nodal_cubic", "parse_poly",
    "isotropy_spheres", "slice_at", "tolman_data", "weight_sum_difference",
    "VerificationReport", "verify_all",
]
