"""Exact coefficient arithmetic and horizontal forms."""

from .forms import HorizontalForm, basis_monomials, de_rham, wedge
from .polynomial import (
    LaurentPolynomial,
    NotDivisible,
    Polynomial,
    poly_divide_exact,
    poly_substitute_linear,
)
from .rational import RationalFunction, laurent_coth_half
from .scalars import I, SQRT5, Cplx, Quad, conj, parse_scalar, rdiv, scalar_str, sign

__all__ = [
    "Cplx",
    "HorizontalForm",
    "I",
    "LaurentPolynomial",
    "NotDivisible",
    "Polynomial",
    "Quad",
    "RationalFunction",
    "SQRT5",
    "basis_monomials",
    "conj",
    "de_rham",
    "laurent_coth_half",
    "parse_scalar",
    "poly_divide_exact",
    "poly_substitute_linear",
    "rdiv",
    "scalar_str",
    "sign",
    "wedge",
]
