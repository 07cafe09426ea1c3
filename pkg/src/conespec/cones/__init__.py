"""Polyhedral good cones, exact amplification tests and cone spectra."""

from .amplified import (
    AmplificationResult,
    GoodConeCertificate,
    InteriorMeet,
    SpectrumResult,
    cone_spectrum,
    is_alpha_amplified,
    iterate_spectrum_check,
    iterate_witness_check,
    restriction_spectrum_check,
    subspace_meets_interior,
    validate_good_cone,
    verify_meet,
    verify_spectrum_theorem,
)
from .lp import find_nonnegative_solution, strict_feasibility
from .polyhedral import PolyhedralCone, facets_from_rays, primitive, rays_from_facets

__all__ = [
    "AmplificationResult", "GoodConeCertificate", "InteriorMeet", "PolyhedralCone", "SpectrumResult",
    "cone_spectrum", "facets_from_rays", "find_nonnegative_solution", "is_alpha_amplified",
    "iterate_spectrum_check", "iterate_witness_check", "primitive", "rays_from_facets", "restriction_spectrum_check",
    "strict_feasibility", "subspace_meets_interior", "validate_good_cone", "verify_meet",
    "verify_spectrum_theorem",
]
