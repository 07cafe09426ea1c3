"""Generated-cycles calculus on finite stratified models."""

from .calculus import (CalculusReport, CutPasteReport, DisjointSupportReport, FiniteVectorMeasure,
                       GeneratedCycle, R_closed, R_direct, atomic_decomposition, calculus_check,
                       cut_and_paste_check, disjoint_support_positivity, intersection_number, is_positive,
                       pi_constructible, pi_recursive, psi, psi_inverse, reconstruct, support, vector_measure)
from .examples import two_lines
from .model import ColimitSpace, Divisor, ModelReport, StratifiedModel, require_valid, validate_model

__all__ = [
    "CalculusReport", "ColimitSpace", "CutPasteReport", "DisjointSupportReport", "Divisor",
    "FiniteVectorMeasure", "GeneratedCycle", "ModelReport", "R_closed", "R_direct", "StratifiedModel",
    "atomic_decomposition", "calculus_check", "cut_and_paste_check", "disjoint_support_positivity",
    "intersection_number", "is_positive", "pi_constructible", "pi_recursive", "psi", "psi_inverse",
    "reconstruct", "require_valid", "support", "two_lines", "validate_model", "vector_measure",
]
