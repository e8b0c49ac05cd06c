"""Exact construction and verification of exceptional Gegenbauer polynomials
of the second kind obtained by confluent Darboux transformations."""

from .darboux import DarbouxChain, SeedSpec, build_chain
from .diffop import D, DiffOp, apply, compose, conjugate, intertwines
from .exceptions import (
    ConsistencyError,
    DegenerateSeedsError,
    GaugeError,
    IncompatibleExponentError,
    InadmissibleParametersError,
    NotEigenfunctionError,
    XGegError,
)
from .gegenbauer import HalfInt, classical_poly, norm_nu, xgeg_operator
from .ratalg import HalfIntExp, Poly, QuasiRat, RatFunc, Z, rat, sturm_count
from .xop2 import XGegFamily, family_recursive, tau_matrix, xpoly_matrix

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "D",
    "DarbouxChain",
    "DegenerateSeedsError",
    "DiffOp",
    "GaugeError",
    "HalfInt",
    "HalfIntExp",
    "IncompatibleExponentError",
    "InadmissibleParametersError",
    "NotEigenfunctionError",
    "Poly",
    "QuasiRat",
    "RatFunc",
    "SeedSpec",
    "XGegError",
    "XGegFamily",
    "Z",
    "apply",
    "build_chain",
    "classical_poly",
    "compose",
    "conjugate",
    "family_recursive",
    "intertwines",
    "norm_nu",
    "rat",
    "sturm_count",
    "tau_matrix",
    "xgeg_operator",
    "xpoly_matrix",
]
