"""Exact sparse polynomials over Q(i) with the reflection calculus."""

from .factor import Factorization, factor
from .gauss import GaussRat, round_gauss
from .gcd import gcd, normalize
from .irreducible import IrreducibilityVerdict, is_irreducible
from .poly import (
    CPoly,
    MultiIndex,
    add,
    conj_coeffs,
    evaluate,
    is_deficient,
    mul,
    nu,
    product,
    reflect,
    scale,
    support,
)
from .text import PolySyntaxError, format_poly, parse_poly, poly_from_json, poly_to_json
from .zerofree import ZeroFreeVerdict, zero_free_on_polydisc

__all__ = [
    "CPoly",
    "Factorization",
    "GaussRat",
    "IrreducibilityVerdict",
    "MultiIndex",
    "PolySyntaxError",
    "ZeroFreeVerdict",
    "add",
    "conj_coeffs",
    "evaluate",
    "factor",
    "format_poly",
    "gcd",
    "is_deficient",
    "is_irreducible",
    "mul",
    "normalize",
    "nu",
    "parse_poly",
    "poly_from_json",
    "poly_to_json",
    "product",
    "reflect",
    "round_gauss",
    "scale",
    "support",
    "zero_free_on_polydisc",
]
