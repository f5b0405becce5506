"""DKHL bound: densities sum_I sigma_I(x) prod_{i in I} (1 - x_i^2).

The reference measure is the Chebyshev product measure. Because
(1 - x^2) w_{-1/2,-1/2} = w_{1/2,1/2}, the term for a subset I is a Lasserre
problem of order d - |I| in a basis that is second-kind Chebyshev on I and
first-kind elsewhere. The blocks share one trace constraint, so the bound is
the smallest of the blocks' smallest eigenvalues.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .errors import InvalidArgument, ResourceLimit
from .lasserre import BoundResult, DensityCertificate, MomentMatrix, build_moment_matrix, smallest_eigenpair
from .orthopoly import CHEBYSHEV_SECOND
from .polycore import SparsePolynomial
from .quadrature import ProductJacobiMeasure

DEFAULT_MAX_N = 6


def block_measure(n: int, subset) -> ProductJacobiMeasure:
    """Chebyshev product measure with the coordinates in ``subset`` switched to weight (1/2, 1/2)."""
    mu = ProductJacobiMeasure.chebyshev(n)
    for i in subset:
        mu = mu.with_params(i, CHEBYSHEV_SECOND)
    return mu


def dkhl_block(f: SparsePolynomial, d: int, subset) -> MomentMatrix:
    """Matrix of the block for ``subset`` (0-based coordinates), indexed by N(n, d - |subset|)."""
    subset = tuple(sorted(set(subset)))
    if any(not 0 <= i < f.n for i in subset):
        raise InvalidArgument(f"subset {subset} is not inside 0..{f.n - 1}")
    if len(subset) > d:
        raise InvalidArgument(f"|I| = {len(subset)} exceeds d = {d}")
    return build_moment_matrix(f, block_measure(f.n, subset), d - len(subset))


def subsets(n: int, d: int):
    """All subsets of coordinates with |I| <= d, smallest first."""
    for size in range(min(n, d) + 1):
        yield from combinations(range(n), size)


def dkhl_bound(
    f: SparsePolynomial, d: int, with_certificate: bool = False, max_n: int = DEFAULT_MAX_N
) -> BoundResult:
    if d < 1:
        raise InvalidArgument(f"need d >= 1, got {d}")
    if f.n > max_n:
        raise ResourceLimit(f"{2 ** f.n} subset blocks for n = {f.n} exceeds the cap n <= {max_n}")
    best = None
    block_values = {}
    for subset in subsets(f.n, d):
        M = dkhl_block(f, d, subset)
        value, u = smallest_eigenpair(M.entries)
        block_values[subset] = value
        if best is None or value < best[0]:
            best = (value, subset, M, u)
    value, subset, M, u = best
    cert = None
    if with_certificate:
        cert = DensityCertificate(M.index_set, np.asarray(u), block_measure(f.n, subset), subset)
    return BoundResult(value, d, "dkhl", cert, {"subset": subset, "block_values": block_values})
