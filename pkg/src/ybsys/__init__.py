"""Exact verification of Yang-Baxter systems built from commutative algebras."""

__version__ = "0.1.0"

from .rings import Ring, Scalar, parse_scalar, scalar_eq, substitute  # noqa: E402
from .tensor import (ColouredOperator, LegShape, RingMatrix, embed12, embed13,  # noqa: E402
                     embed23, flip, identity, kron, mat_add, mat_mul, mat_scale,
                     mat_sub, plus_conj, plusplus_conj)
from .commutators import (SystemReport, coloured_commutator, coloured_system_residuals,  # noqa: E402
                          reflection_residuals, wxz_residuals, yb_commutator)
from .algebras import (CoefficientTriple, FiniteAlgebra, OperatorQuadruple,  # noqa: E402
                       build_operator, klein_group_algebra, named_algebra,
                       theorem21_quadruple, theorem31_quadruple,
                       truncated_polynomial_algebra, two_dim_algebra, validate_algebra)

__all__ = [
    "Ring", "Scalar", "parse_scalar", "scalar_eq", "substitute",
    "ColouredOperator", "LegShape", "RingMatrix", "embed12", "embed13", "embed23", "flip",
    "identity", "kron", "mat_add", "mat_mul", "mat_scale", "mat_sub", "plus_conj",
    "plusplus_conj", "SystemReport", "coloured_commutator", "coloured_system_residuals",
    "reflection_residuals", "wxz_residuals", "yb_commutator", "CoefficientTriple",
    "FiniteAlgebra", "OperatorQuadruple", "build_operator", "klein_group_algebra",
    "named_algebra", "theorem21_quadruple", "theorem31_quadruple",
    "truncated_polynomial_algebra", "two_dim_algebra", "validate_algebra",
]
