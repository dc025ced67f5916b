"""Exact computations with representations of the category of finite
linearly ordered sets and order-preserving injections."""

from .category import OrdMorphism, alpha, compose, enumerate_morphisms, rho
from .linalg import GF, QQ, Matrix, field_context, get_field, set_field
from .modules import (
    PresentedModule,
    TruncatedModule,
    evaluate_presentation,
    free_module,
    hom_from_presentation,
    hom_truncated,
    is_isomorphic,
)
from .functors import FUNCTOR_NAMES, get_functor
from .adjunctions import verify_adjunctions
from .torsion import is_torsion_module, torsion_witness
from .nakayama import inverse_nakayama, nakayama, nu_inverse_roundtrip, simple_saturated

__version__ = "0.1.0"

__all__ = [
    "FUNCTOR_NAMES", "GF", "QQ", "Matrix", "OrdMorphism", "PresentedModule", "TruncatedModule",
    "alpha", "compose", "enumerate_morphisms", "evaluate_presentation", "field_context", "free_module",
    "get_field", "get_functor", "hom_from_presentation", "hom_truncated", "inverse_nakayama",
    "is_isomorphic", "is_torsion_module", "nakayama", "nu_inverse_roundtrip", "rho", "set_field",
    "simple_saturated", "torsion_witness", "verify_adjunctions",
]
