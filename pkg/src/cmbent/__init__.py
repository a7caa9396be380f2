"""Exact construction and verification of Coulter-Matthews bent duals over GF(3^n)."""
from .cmdual import (
    CmParams,
    DualRep,
    algebraic_degree,
    classify_special,
    derive_params,
    dual_representation,
    eval_dual,
    gen_sets,
)
from .estimator import CoulterMatthewsDual
from .gf3 import FieldCtx, FieldElement, build_field
from .walsh import EisensteinInt, extract_dual, verify_bent, verify_weak_regularity

__version__ = "0.1.0"

__all__ = [
    "CmParams",
    "CoulterMatthewsDual",
    "DualRep",
    "EisensteinInt",
    "FieldCtx",
    "FieldElement",
    "algebraic_degree",
    "build_field",
    "classify_special",
    "derive_params",
    "dual_representation",
    "eval_dual",
    "extract_dual",
    "gen_sets",
    "verify_bent",
    "verify_weak_regularity",
]
