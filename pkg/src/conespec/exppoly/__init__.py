"""Exponential-polynomial sequences: exact evaluation, dominant signatures,
region sampling, rotation closures and the one-variable sign search."""

from .core import (DEFAULT_WIDTH, CesaroReport, DeclaredRateReport, DominantSignature, ExpPoly,
                   ExpPolyTerm, NegativeValue, RegionReport, cesaro_check, declared_rate_diagnostic,
                   cos_pair, dominant_signature, eval_exppoly, evaluate, negative_value_search,
                   region_bound_check, region_points, sample_region, split_dominant, term)
from .cyclotomic import CertifiedValue, certified_sum
from .torus import (NumericRecurrence, QBoundReport, TorusClosure, q_lower_bound_check, q_values,
                    torus_closure, torus_closure_numeric, visit_bound)

__all__ = [
    "DEFAULT_WIDTH", "CesaroReport", "CertifiedValue", "DeclaredRateReport", "DominantSignature",
    "ExpPoly", "ExpPolyTerm", "NegativeValue", "NumericRecurrence", "QBoundReport", "RegionReport",
    "TorusClosure", "certified_sum", "cesaro_check", "declared_rate_diagnostic", "cos_pair",
    "dominant_signature", "eval_exppoly", "evaluate", "negative_value_search", "q_lower_bound_check",
    "q_values", "region_bound_check", "region_points", "sample_region", "split_dominant", "term",
    "torus_closure", "torus_closure_numeric", "visit_bound",
]
