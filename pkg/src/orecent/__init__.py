"""Exact arithmetic in non-associative Ore extensions A[y][x; sigma, delta].

Centralizers of nucleus elements, their free-module bases over K[a],
condition-D certificates and Burchnall-Chaundy annihilating polynomials.
"""
from .algebra import (AlgebraSpec, AlgElem, associator, cayley_dickson_double, commutator,
                      complexes, mul, octonions, quaternions, rationals)
from .bc import (BivarPoly, annihilating_polynomial, evaluate,
                 find_annihilating_polynomial)
from .centralizer import (CentralizerQuery, ModuleBasis, PreconditionError,
                          RankBoundExceeded, centralizer_space, check_D_condition,
                          check_degree_sum, check_rank_divides, leading_ydeg, left_power,
                          module_basis)
from .coeff import (CoeffPoly, DeltaSpec, SigmaSpec, apply_delta, apply_sigma, poly_mul,
                    verify_sigma_derivation)
from .contexts import build_context, diff_oct, diff_rat, subst_oct
from .exact import RatMatrix, in_span, nullspace_basis, rref
from .ore import (OreContext, OreElem, associator_ore, chi, commutes, nucleus_check,
                  ore_mul, pi_map)
from .parser import ParseError, parse_coeff_poly, parse_element

__version__ = "0.1.0"

__all__ = [
    "AlgebraSpec",
    "AlgElem",
    "associator",
    "cayley_dickson_double",
    "commutator",
    "complexes",
    "mul",
    "octonions",
    "quaternions",
    "rationals",
    "BivarPoly",
    "annihilating_polynomial",
    "evaluate",
    "find_annihilating_polynomial",
    "CentralizerQuery",
    "ModuleBasis",
    "PreconditionError",
    "RankBoundExceeded",
    "centralizer_space",
    "check_D_condition",
    "check_degree_sum",
    "check_rank_divides",
    "leading_ydeg",
    "left_power",
    "module_basis",
    "CoeffPoly",
    "DeltaSpec",
    "SigmaSpec",
    "apply_delta",
    "apply_sigma",
    "poly_mul",
    "verify_sigma_derivation",
    "build_context",
    "diff_oct",
    "diff_rat",
    "subst_oct",
    "RatMatrix",
    "in_span",
    "nullspace_basis",
    "rref",
    "OreContext",
    "OreElem",
    "associator_ore",
    "chi",
    "commutes",
    "nucleus_check",
    "ore_mul",
    "pi_map",
    "ParseError",
    "parse_coeff_poly",
    "parse_element",
]
