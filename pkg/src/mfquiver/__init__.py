"""Graded matrix factorizations of x^h and their comparison with the A_{h-1} quiver."""
from .mfcore import (
    GradedMF,
    cone,
    direct_sum,
    indecomposable,
    knorrer_double,
    serre,
    shift,
    translate,
    trivial_pair,
    verify_mf,
)

__version__ = "0.1.0"

__all__ = [
    "GradedMF",
    "cone",
    "direct_sum",
    "indecomposable",
    "knorrer_double",
    "serre",
    "shift",
    "translate",
    "trivial_pair",
    "verify_mf",
]
