"""Exact computations with Serre subcategories, recollements and torsion pairs in mod A."""

from .algebra import (
    Algebra, Bimodule, ZeroCategory, algebra_iso, ground_field, path_algebra, product_algebra,
    regular_bimodule, regular_bimodules, structure_algebra, triangular_algebra,
)
from .functors import HomF, Tensor, is_exact, is_fully_faithful, left_adjoint, natural_iso, right_adjoint
from .linalg import GF, QQ, Matrix
from .modcat import Module, Morphism, hom_space, probe_family
from .recollement import canonical_recollement, recollement_at, split_check
from .serre import from_simples
from .typeclass import classify, classify_all, remark54_check

__all__ = [
    "Algebra", "Bimodule", "ZeroCategory", "algebra_iso", "ground_field", "path_algebra",
    "product_algebra", "regular_bimodule", "regular_bimodules", "structure_algebra",
    "triangular_algebra", "HomF", "Tensor", "is_exact", "is_fully_faithful", "left_adjoint",
    "natural_iso", "right_adjoint", "GF", "QQ", "Matrix", "Module", "Morphism", "hom_space",
    "probe_family", "canonical_recollement", "recollement_at", "split_check", "from_simples",
    "classify", "classify_all", "remark54_check",
]

__version__ = "0.1.0"
