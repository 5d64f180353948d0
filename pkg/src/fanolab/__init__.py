"""Exact computations on toric Fano varieties and pencils of quadrics."""

from .classify import EnumerationConfig, classify_rank1, classify_surface, enumerate_ldp
from .lattice import CyclicQuotientType, UnimodularMap, cone_normal_form
from .pencil import QuadricPencil, Stability, binary_form_stability, pencil_stability
from .polytope import FanoPolytope, InvalidPolytope, degree, dual, make_fano, normal_form, summarize
from .report import AnalysisReport, analyze
from .singularities import classify_edges

__all__ = [
    "AnalysisReport",
    "CyclicQuotientType",
    "EnumerationConfig",
    "FanoPolytope",
    "InvalidPolytope",
    "QuadricPencil",
    "Stability",
    "UnimodularMap",
    "analyze",
    "binary_form_stability",
    "classify_edges",
    "classify_rank1",
    "classify_surface",
    "cone_normal_form",
    "degree",
    "dual",
    "enumerate_ldp",
    "make_fano",
    "normal_form",
    "pencil_stability",
    "summarize",
]
