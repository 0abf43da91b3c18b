"""Exact splitting types of principal-parts bundles on the projective line."""

from .errors import JetSplitError
from .exactfield import FieldElement, FieldSpec, binomial, is_prime, reduce
from .laurent import QQ, LaurentMatrix, LaurentPoly, PolySide, random_unimodular
from .jetmatrices import JetParams, left_transition, right_transition, p1_base_change, section4_factors, transition, untwisted_transition
from .splitting import (
    BirkhoffCertificate,
    SplittingType,
    birkhoff_split,
    h0_dimension,
    oracle_split,
    verify_certificate,
)
from .binomsys import build_system, char0_split, solve_system, split_via_systems

__all__ = [
    "JetSplitError",
    "FieldElement",
    "FieldSpec",
    "binomial",
    "is_prime",
    "reduce",
    "QQ",
    "LaurentMatrix",
    "LaurentPoly",
    "PolySide",
    "random_unimodular",
    "JetParams",
    "left_transition",
    "right_transition",
    "p1_base_change",
    "section4_factors",
    "transition",
    "untwisted_transition",
    "BirkhoffCertificate",
    "SplittingType",
    "birkhoff_split",
    "h0_dimension",
    "oracle_split",
    "verify_certificate",
    "build_system",
    "char0_split",
    "solve_system",
    "split_via_systems",
]
