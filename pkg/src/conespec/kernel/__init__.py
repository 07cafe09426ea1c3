"""Exact arithmetic substrate: polynomials, algebraic numbers, number fields,
linear algebra and certified spectra."""

from .algebraic import ComplexAlgebraic, RealAlgebraic
from .linalg import RationalMatrix, char_poly
from .numberfield import NFElement, NumberField, algebraic_sign, compositum, field_of
from .spectrum import (
    CertifiedSpectrum,
    EigenSubspace,
    Eigenvalue,
    GrowthSignature,
    certified_spectrum,
    generalized_eigenspace,
    growth_rate,
    growth_signature,
    spectral_radius,
)

__all__ = [
    "CertifiedSpectrum", "ComplexAlgebraic", "EigenSubspace", "Eigenvalue", "GrowthSignature",
    "NFElement", "NumberField", "RationalMatrix", "RealAlgebraic", "algebraic_sign",
    "certified_spectrum", "char_poly", "compositum", "field_of", "generalized_eigenspace",
    "growth_rate", "growth_signature", "spectral_radius",
]
