"""Lasserre's measure-based upper bound on the hypercube.

With the orthonormal tensor Jacobi basis b_alpha of the reference measure,
the bound of order d is the smallest eigenvalue of

    A[alpha, beta] = integral of f * b_alpha * b_beta dmu,   alpha, beta in N(n, d),

and the matching unit eigenvector u gives the optimal density
sigma = (sum_alpha u_alpha b_alpha)^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidArgument, NumericFailure
from .polycore import MultiIndexSet, SparsePolynomial, enumerate_multiindices
from .quadrature import ProductJacobiMeasure, basis_table, weighted_gram_tables

HIERARCHIES = ("lasserre", "dkhl", "grid-lobatto", "grid-regular")

GRAM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class MomentMatrix:
    index_set: MultiIndexSet
    entries: np.ndarray

    @property
    def order(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class DensityCertificate:
    """sigma(x) = prod_{i in subset} (1 - x_i^2) * (sum_alpha u_alpha b_alpha(x))^2.

    ``basis_measure`` is the measure the b_alpha are orthonormal for. For the
    plain Lasserre bound it is the reference measure and ``subset`` is empty;
    for a DKHL block the coordinates in ``subset`` use the second-kind
    Chebyshev basis while sigma is integrated against the Chebyshev measure.
    """

    index_set: MultiIndexSet
    coefficients: np.ndarray
    basis_measure: ProductJacobiMeasure
    subset: tuple[int, ...] = ()

    @property
    def d(self) -> int:
        return self.index_set.d

    def normalized(self) -> DensityCertificate:
        """Rescale so that the density has unit mass (mass = |u|^2 by orthonormality)."""
        u = np.asarray(self.coefficients, dtype=float)
        return DensityCertificate(self.index_set, u / np.linalg.norm(u), self.basis_measure, self.subset)

    def root_values(self, points) -> np.ndarray:
        """sum_alpha u_alpha b_alpha at each row of ``points``."""
        X = np.atleast_2d(np.asarray(points, dtype=float))
        mu = self.basis_measure
        d = self.index_set.d
        tables = [basis_table(p, d, X[:, i], mu.coordinate_scale(i)) for i, p in enumerate(mu.params)]
        idx = self.index_set.as_array()
        out = np.zeros(X.shape[0])
        for row, coeff in zip(idx, self.coefficients):
            term = np.full(X.shape[0], coeff)
            for i in range(mu.n):
                term = term * tables[i][:, row[i]]
            out += term
        return out

    def density(self, points) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, dtype=float))
        vals = self.root_values(X) ** 2
        for i in self.subset:
            vals = vals * (1 - X[:, i] ** 2)
        return vals


@dataclass(frozen=True)
class BoundResult:
    value: float
    d: int
    hierarchy: str
    certificate: DensityCertificate | None = None
    details: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CertificateReport:
    mass: float
    objective: float
    mass_error: float
    objective_error: float

    def ok(self, tol: float = 1e-8) -> bool:
        return self.mass_error <= tol and self.objective_error <= tol


def _check(f: SparsePolynomial, mu: ProductJacobiMeasure, d: int) -> None:
    if d < 0:
        raise InvalidArgument(f"need d >= 0, got {d}")
    if f.n != mu.n:
        raise InvalidArgument(f"polynomial has {f.n} variables, measure has {mu.n}")


def build_moment_matrix(f: SparsePolynomial, mu: ProductJacobiMeasure, d: int) -> MomentMatrix:
    _check(f, mu, d)
    index = enumerate_multiindices(mu.n, d)
    idx = index.as_array()
    powers = [{delta[i] for delta in f.terms} or {0} for i in range(mu.n)]
    tables = weighted_gram_tables(mu, d, powers)
    N = len(index)
    A = np.zeros((N, N))
    # every monomial term factors into a product of 1-D tables
    for delta, coeff in f.terms.items():
        block = np.full((N, N), coeff)
        for i in range(mu.n):
            G = tables[i][delta[i]]
            block *= G[idx[:, i][:, None], idx[:, i][None, :]]
        A += block
    A = 0.5 * (A + A.T)
    return MomentMatrix(index, A)


def gram_matrix(mu: ProductJacobiMeasure, d: int) -> MomentMatrix:
    """Gram matrix B of the basis, which must be the identity."""
    return build_moment_matrix(SparsePolynomial.constant(mu.n, 1.0), mu, d)


def validate_basis(mu: ProductJacobiMeasure, d: int, tol: float = GRAM_TOLERANCE) -> float:
    """Max-norm distance of B from the identity; raises NumericFailure above ``tol``."""
    B = gram_matrix(mu, d).entries
    err = float(np.max(np.abs(B - np.eye(B.shape[0]))))
    if err >= tol:
        raise NumericFailure(f"basis is not orthonormal to {tol:g}: |B - I| = {err:.3e}")
    return err


def fix_sign(u: np.ndarray) -> np.ndarray:
    """Make the largest-magnitude entry positive (first one on ties)."""
    k = int(np.argmax(np.abs(u)))
    return -u if u[k] < 0 else u


def smallest_eigenpair(A: np.ndarray) -> tuple[float, np.ndarray]:
    try:
        vals, vecs = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise NumericFailure(f"symmetric eigensolver failed: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise NumericFailure("eigensolver returned non-finite values")
    return float(vals[0]), fix_sign(vecs[:, 0])


def lasserre_bound(
    f: SparsePolynomial, mu: ProductJacobiMeasure, d: int, with_certificate: bool = False
) -> BoundResult:
    _check(f, mu, d)
    index = enumerate_multiindices(mu.n, d)
    if f.is_constant():
        c = f.constant_term()
        cert = None
        if with_certificate:
            u = np.zeros(len(index))
            u[0] = 1.0
            cert = DensityCertificate(index, u, mu)
        return BoundResult(c, d, "lasserre", cert)
    A = build_moment_matrix(f, mu, d).entries
    if not with_certificate:
        try:
            value = float(np.linalg.eigvalsh(A)[0])
        except np.linalg.LinAlgError as exc:
            raise NumericFailure(f"symmetric eigensolver failed: {exc}") from exc
        return BoundResult(value, d, "lasserre")
    value, u = smallest_eigenpair(A)
    return BoundResult(value, d, "lasserre", DensityCertificate(index, u, mu))


def _product_grid(rules):
    grids = np.meshgrid(*[r.nodes for r in rules], indexing="ij")
    points = np.stack([g.ravel() for g in grids], axis=1)
    weights = rules[0].weights
    for r in rules[1:]:
        weights = np.multiply.outer(weights, r.weights)
    return points, np.ravel(weights)


def certificate_check(
    cert: DensityCertificate,
    f: SparsePolynomial,
    mu: ProductJacobiMeasure,
    claimed: float,
) -> CertificateReport:
    """Re-integrate sigma and f*sigma against ``mu`` on a full tensor Gauss grid.

    Uses pointwise evaluation of the density, so it does not share the
    moment-matrix code path that produced the certificate.
    """
    if f.n != mu.n or cert.basis_measure.n != mu.n:
        raise InvalidArgument("certificate, polynomial and measure dimensions differ")
    degs = f.coordinate_degrees()
    rules = []
    for i in range(mu.n):
        extra = 2 if i in cert.subset else 0
        deg = degs[i] + 4 * cert.d + extra
        rules.append(mu.rule(i, deg))
    points, weights = _product_grid(rules)
    sigma = cert.density(points)
    mass = float(np.dot(weights, sigma))
    objective = float(np.dot(weights, sigma * f.evaluate_many(points)))
    return CertificateReport(
        mass=mass,
        objective=objective,
        mass_error=abs(mass - 1.0),
        objective_error=abs(objective - claimed),
    )

