"""Gröbner strata of monomial ideals: defining ideals, tangent spaces and
minimal embeddings computed from the corners of a standard set."""

from grobstrata.errors import (
    AntichainViolation,
    ConfigError,
    DimensionMismatch,
    GrobstrataError,
    InternalInvariantViolation,
    ModeError,
    NoWeightFound,
    OrderTieError,
    SubstitutionNonterminating,
    TruncationTooSmall,
)
from grobstrata.monomials import MonomialOrder, divides
from grobstrata.poly import Poly, TVar, build_weight
from grobstrata.scheme import SchemeIdeal, build_scheme, universal_family
from grobstrata.standard_set import EdgeTriple, StandardSet, validate_corners
from grobstrata.tangent import eliminate, row_reduce, tangent_relations, tangent_report

__version__ = "0.1.0"

__all__ = [
    "AntichainViolation",
    "ConfigError",
    "DimensionMismatch",
    "EdgeTriple",
    "GrobstrataError",
    "InternalInvariantViolation",
    "ModeError",
    "MonomialOrder",
    "NoWeightFound",
    "OrderTieError",
    "Poly",
    "SchemeIdeal",
    "StandardSet",
    "SubstitutionNonterminating",
    "TVar",
    "TruncationTooSmall",
    "build_scheme",
    "build_weight",
    "divides",
    "eliminate",
    "row_reduce",
    "tangent_relations",
    "tangent_report",
    "universal_family",
    "validate_corners",
]
