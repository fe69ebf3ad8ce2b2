"""Exact arithmetic and polynomial primitives shared by every solver."""

from .arith import (INFINITY, bitlen, ext_gcd, gcd_free_basis, isqrt_ceil,
                    ord_int, ord_p, pow_mod, rational_mod, unit_part)
from .dense import (DensePolyModP, bareiss_det, poly_divmod_mod_p,
                    poly_gcd_mod_p, roots_mod_p, squarefree_part)
from .sparse import (X, InexactDivisionError, PolyParseError, SparsePoly,
                     parse_poly, parse_poly_json, size_f, size_p, sparse_div_exact,
                     sparse_mul)

__all__ = [
    "INFINITY", "bitlen", "ext_gcd", "gcd_free_basis", "isqrt_ceil", "ord_int",
    "ord_p", "pow_mod", "rational_mod", "unit_part", "DensePolyModP",
    "bareiss_det", "poly_divmod_mod_p", "poly_gcd_mod_p", "roots_mod_p",
    "squarefree_part", "X", "InexactDivisionError", "PolyParseError",
    "SparsePoly", "parse_poly", "parse_poly_json", "size_f", "size_p",
    "sparse_div_exact", "sparse_mul",
]
