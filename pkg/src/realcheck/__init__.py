"""Exact local-dimension certificates for realization spaces of polytopes."""

from .exact_arith import BigRational, RatFunc, UniPoly
from .linalg import ExactMatrix, Subspace
from .polytope import LabeledPolytope, facets_from_vertices

__version__ = "0.1.0"

__all__ = ["BigRational", "RatFunc", "UniPoly", "ExactMatrix", "Subspace", "LabeledPolytope", "facets_from_vertices"]
