"""Measure-based upper bounds for polynomial minimization over [-1, 1]^n."""

from .analysis import grid_bound, quadratic_upper_estimator, rate_fit, reference_minimum
from .dkhl import dkhl_block, dkhl_bound
from .errors import BoundsError, InvalidArgument, NumericFailure, ParseError, ResourceLimit
from .lasserre import BoundResult, DensityCertificate, build_moment_matrix, certificate_check, lasserre_bound
from .orthopoly import CHEBYSHEV, CHEBYSHEV_SECOND, LEGENDRE, JacobiParams, roots, smallest_root
from .polycore import SparsePolynomial, enumerate_multiindices, parse_polynomial
from .quadrature import ProductJacobiMeasure, gauss_jacobi, integrate

__all__ = [
    "BoundResult", "BoundsError", "CHEBYSHEV", "CHEBYSHEV_SECOND", "DensityCertificate", "InvalidArgument",
    "JacobiParams", "LEGENDRE", "NumericFailure", "ParseError", "ProductJacobiMeasure", "ResourceLimit",
    "SparsePolynomial", "build_moment_matrix", "certificate_check", "dkhl_block", "dkhl_bound",
    "enumerate_multiindices", "gauss_jacobi", "grid_bound", "integrate", "lasserre_bound", "parse_polynomial",
    "quadratic_upper_estimator", "rate_fit", "reference_minimum", "roots", "smallest_root",
]
