"""Exact arithmetic: rationals, polynomials, weight systems, cyclotomic integers, matrices."""
from fractions import Fraction as Rational

from .cyclotomic import CyclotomicInt
from .linalg import KernelImage, RatMatrix, rat_kernel_image, span_rank
from .poly import (
    NonHomogeneous,
    Poly,
    check_quasi_homogeneous,
    format_rational,
    parse_rational,
    residue_div,
    weighted_degree,
)
from .weights import (
    RegularityWitness,
    WeightSystem,
    chi_by_division,
    cyclotomic,
    is_regular_weight_system,
    milnor_number,
)


def poly_arith(p: Poly, q: Poly | Rational, op: str) -> Poly:
    """Dispatch ``add``/``sub``/``mul`` on two polynomials, or ``scale`` by a rational."""
    if op == "scale":
        return p.scale(q)
    if not isinstance(q, Poly):
        raise TypeError("second operand must be a polynomial")
    if p.nvars != q.nvars:
        raise ValueError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, var_index: int) -> Poly:
    return p.derivative(var_index)


__all__ = [
    "CyclotomicInt",
    "KernelImage",
    "NonHomogeneous",
    "Poly",
    "RatMatrix",
    "Rational",
    "RegularityWitness",
    "WeightSystem",
    "check_quasi_homogeneous",
    "chi_by_division",
    "cyclotomic",
    "format_rational",
    "is_regular_weight_system",
    "milnor_number",
    "parse_rational",
    "partial_derivative",
    "poly_arith",
    "rat_kernel_image",
    "residue_div",
    "span_rank",
    "weighted_degree",
]
