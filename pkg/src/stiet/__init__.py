"""Exact-arithmetic toolkit for square-tiled interval exchanges.

Builds interval exchange transformations over square-tiled surfaces and the
regular-polygon billiard family, codes their orbits symbolically, and runs
exact rigidity/non-rigidity experiments (return-word induction, homologous
words, neighbor decompositions, defect scans, rigidity-time construction).
"""

from stiet.numeric import (
    AlphaLinear,
    AlphaValue,
    PrecisionExhaustedError,
    QuadraticNumber,
    compare_affine,
    convergents,
    cf_expand,
    parse_alpha,
    sqrt_quadratic,
)
from stiet.origami import Origami, Permutation, SingularityData, REGISTRY, get_surface

__all__ = [
    "AlphaLinear",
    "AlphaValue",
    "PrecisionExhaustedError",
    "QuadraticNumber",
    "compare_affine",
    "convergents",
    "cf_expand",
    "parse_alpha",
    "sqrt_quadratic",
    "Origami",
    "Permutation",
    "SingularityData",
    "REGISTRY",
    "get_surface",
]
