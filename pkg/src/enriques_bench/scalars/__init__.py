"""Exact scalar and polynomial arithmetic."""

from .fields import (
    QQ,
    Cyclotomic,
    CyclotomicElement,
    Field,
    FiniteField,
    GFElement,
    PrimeField,
    PrimeFieldExt,
    Rationals,
    element_from_json,
    element_to_json,
    field_make,
    is_prime,
)
from .poly import (
    Poly,
    poly_from_json,
    poly_gcd,
    poly_powmod,
    poly_xgcd,
    reciprocal_twist,
    squarefree_decomposition,
    squarefree_part,
)
from .laurent import Laurent
from .roots import distinct_degree_factorization, factor_ff, poly_roots

__all__ = [
    "QQ", "Cyclotomic", "CyclotomicElement", "Field", "FiniteField", "GFElement",
    "PrimeField", "PrimeFieldExt", "Rationals", "element_from_json", "element_to_json",
    "field_make", "is_prime", "Poly", "poly_from_json", "poly_gcd", "poly_powmod",
    "poly_xgcd", "reciprocal_twist", "squarefree_decomposition", "squarefree_part",
    "distinct_degree_factorization", "factor_ff", "poly_roots", "Laurent",
]
