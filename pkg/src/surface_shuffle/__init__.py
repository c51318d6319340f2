"""Exact computations in the K-theoretic shuffle algebra of a surface."""
from .lambda_ops import (
    AffinePlane, BadPair, Custom, SymbolicSurface, VirtualClass, diagonal_class, parse_model, rho_factor,
    rho_kernel, wedge_total, zeta,
)
from .ring import (
    DegenerateFactor, DivisionByZero, FactoredDenom, IndexOutOfRange, LaurentPoly, Permutation, RatFunc,
    Symbol, factor_sym, lp_arith, mono, pair_sym, param, permute_action, rf_arith, rf_eq, rf_normalize, z,
)
from .shuffle import (
    GradedElement, ShuffleElement, is_symmetric, pipeline_mul, shuffle_mul, sym_full, sym_shuffle, unit,
)

__all__ = [
    "AffinePlane", "BadPair", "Custom", "SymbolicSurface", "VirtualClass", "diagonal_class", "parse_model",
    "rho_factor", "rho_kernel", "wedge_total", "zeta",
    "DegenerateFactor", "DivisionByZero", "FactoredDenom", "IndexOutOfRange", "LaurentPoly", "Permutation",
    "RatFunc", "Symbol", "factor_sym", "lp_arith", "mono", "pair_sym", "param", "permute_action", "rf_arith",
    "rf_eq", "rf_normalize", "z",
    "GradedElement", "ShuffleElement", "is_symmetric", "pipeline_mul", "shuffle_mul", "sym_full",
    "sym_shuffle", "unit",
]
