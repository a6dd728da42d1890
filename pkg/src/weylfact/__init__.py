"""Exact Newton-polygon analysis and formal factorization of linear ODE
operators at a singular point.

Everything runs over exact rationals: Newton polygons and Poincare spectra,
characteristic polynomials of quasihomogeneous parts, commutative
factorization of truncated pseudopolynomials, and noncommutative
factorization in the algebra generated by t and the Euler derivation
E = t*d/dt, all verified by exact recomposition.
"""

from .factor import (
    ResonanceError,
    factor_by_characteristic,
    factor_by_slopes,
    monic_refinement,
)
from .homological import (
    HomologicalData,
    ObstructionError,
    Slice,
    fuchsian_division_step,
    hom_matrix,
    hom_solve,
    slice_basis,
    sylvester_bijective,
    sylvester_matrix,
)
from .newton import LatticePoint, Polygon, Slope
from .parse import (
    ExprSyntaxError,
    operator_from_text,
    operator_to_text,
    parse_operator,
    parse_poly,
    to_operator,
)
from .polys import (
    UniPoly,
    poly_divmod,
    poly_gcd,
    rational_roots,
    squarefree_coprime_split,
)
from .pseudopoly import CharPoly, PseudoPoly, QHPart, char_poly
from .weyl import (
    WeylOperator,
    compose_all,
    factor_monic,
    verify_factorization,
    weyl_factor_characteristic,
    weyl_factor_slopes,
)

__all__ = [
    "CharPoly",
    "ExprSyntaxError",
    "HomologicalData",
    "LatticePoint",
    "ObstructionError",
    "Polygon",
    "PseudoPoly",
    "QHPart",
    "ResonanceError",
    "Slice",
    "Slope",
    "UniPoly",
    "WeylOperator",
    "char_poly",
    "compose_all",
    "factor_by_characteristic",
    "factor_by_slopes",
    "factor_monic",
    "fuchsian_division_step",
    "hom_matrix",
    "hom_solve",
    "monic_refinement",
    "operator_from_text",
    "operator_to_text",
    "parse_operator",
    "parse_poly",
    "poly_divmod",
    "poly_gcd",
    "rational_roots",
    "slice_basis",
    "squarefree_coprime_split",
    "sylvester_bijective",
    "sylvester_matrix",
    "to_operator",
    "verify_factorization",
    "weyl_factor_characteristic",
    "weyl_factor_slopes",
]
