"""Gauss-Jacobi rules and integration against product Jacobi measures.

Every integral here has a polynomial integrand, so node counts are derived
from degrees: a rule with m nodes is exact through degree 2m - 1, and we add
``NODE_MARGIN`` extra nodes on top of the minimal exact count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import InvalidArgument
from .orthopoly import CHEBYSHEV, LEGENDRE, JacobiParams, evaluate_family, jacobi_matrix, tridiagonal_eigh
from .polycore import MultiIndex, SparsePolynomial

NODE_MARGIN = 2


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    exactness_degree: int

    def integrate(self, values) -> float:
        return float(np.dot(self.weights, values))


def nodes_for_degree(degree: int) -> int:
    """Node count that integrates a degree-``degree`` polynomial exactly, plus margin."""
    return max(degree, 0) // 2 + 1 + NODE_MARGIN


@lru_cache(maxsize=512)
def _gauss_jacobi_cached(alpha: float, beta: float, m: int):
    p = JacobiParams(alpha, beta)
    diag, off = jacobi_matrix(p, m)
    nodes, vecs = tridiagonal_eigh(diag, off, vectors=True)
    order = np.argsort(nodes)
    nodes = nodes[order]
    weights = p.mass() * vecs[0, order] ** 2
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_jacobi(p: JacobiParams, m: int) -> QuadratureRule:
    """Golub-Welsch: nodes are Jacobi-matrix eigenvalues, weights mass * (first eigenvector component)^2."""
    if m < 1:
        raise InvalidArgument(f"need at least one node, got {m}")
    nodes, weights = _gauss_jacobi_cached(p.alpha, p.beta, m)
    return QuadratureRule(nodes, weights, 2 * m - 1)


def jacobi_moment_ratios(p: JacobiParams, jmax: int) -> list[Fraction]:
    """Exact m_j / m_0 for j = 0..jmax, where m_j = integral of x^j (1-x)^alpha (1+x)^beta.

    Integrating d/dx[x^j (1 - x^2) w(x)] over [-1, 1] gives
    (j + 2 + alpha + beta) m_{j+1} = j m_{j-1} + (beta - alpha) m_j.
    Parameters are taken as exact binary fractions, so no rounding occurs.
    """
    al, be = Fraction(p.alpha), Fraction(p.beta)
    r = [Fraction(1)]
    if jmax >= 1:
        r.append((be - al) / (al + be + 2))
    for j in range(1, jmax):
        r.append((j * r[j - 1] + (be - al) * r[j]) / (j + 2 + al + be))
    return r[: jmax + 1]


def jacobi_moments(p: JacobiParams, jmax: int) -> np.ndarray:
    mass = p.mass()
    return np.array([mass * float(q) for q in jacobi_moment_ratios(p, jmax)])


@dataclass(frozen=True)
class ProductJacobiMeasure:
    """dmu(x) = scaling * prod_i (1 - x_i)^alpha_i (1 + x_i)^beta_i dx_i on [-1, 1]^n."""

    params: tuple[JacobiParams, ...]
    scaling: float = 1.0

    def __post_init__(self):
        params = tuple(self.params)
        if not params:
            raise InvalidArgument("a product measure needs at least one coordinate")
        for p in params:
            if not isinstance(p, JacobiParams):
                raise InvalidArgument(f"expected JacobiParams, got {type(p).__name__}")
        if not self.scaling > 0:
            raise InvalidArgument(f"scaling must be positive, got {self.scaling}")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "scaling", float(self.scaling))

    @property
    def n(self) -> int:
        return len(self.params)

    @classmethod
    def uniform(cls, p: JacobiParams, n: int, scaling: float = 1.0) -> ProductJacobiMeasure:
        return cls((p,) * n, scaling)

    @classmethod
    def chebyshev(cls, n: int, scaling: float = 1.0) -> ProductJacobiMeasure:
        return cls.uniform(CHEBYSHEV, n, scaling)

    @classmethod
    def legendre(cls, n: int, scaling: float = 1.0) -> ProductJacobiMeasure:
        return cls.uniform(LEGENDRE, n, scaling)

    @classmethod
    def from_string(cls, text: str, n: int | None = None, scaling: float = 1.0) -> ProductJacobiMeasure:
        """Parse ``"a1,b1;a2,b2;..."``; a single pair is repeated to length ``n``."""
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = chunk.split(",")
            if len(parts) != 2:
                raise InvalidArgument(f"measure entry {chunk!r} is not 'alpha,beta'")
            try:
                pairs.append(JacobiParams(float(Fraction(parts[0].strip())), float(Fraction(parts[1].strip()))))
            except ValueError as exc:
                raise InvalidArgument(f"bad number in measure entry {chunk!r}") from exc
        if not pairs:
            raise InvalidArgument("empty measure specification")
        if n is not None and len(pairs) == 1:
            pairs = pairs * n
        if n is not None and len(pairs) != n:
            raise InvalidArgument(f"measure has {len(pairs)} coordinates, expected {n}")
        return cls(tuple(pairs), scaling)

    def total_mass(self) -> float:
        return self.scaling * math.prod(p.mass() for p in self.params)

    def coordinate_scale(self, i: int) -> float:
        """The overall scaling is carried entirely by the first coordinate."""
        return self.scaling if i == 0 else 1.0

    def rule(self, i: int, degree: int) -> QuadratureRule:
        """1-D rule for coordinate ``i`` with this coordinate's share of the scaling folded into the weights."""
        base = gauss_jacobi(self.params[i], nodes_for_degree(degree))
        s = self.coordinate_scale(i)
        if s == 1.0:
            return base
        return QuadratureRule(base.nodes, base.weights * s, base.exactness_degree)

    def with_params(self, i: int, p: JacobiParams) -> ProductJacobiMeasure:
        params = list(self.params)
        params[i] = p
        return ProductJacobiMeasure(tuple(params), self.scaling)


def _check_dims(f: SparsePolynomial, mu: ProductJacobiMeasure) -> None:
    if f.n != mu.n:
        raise InvalidArgument(f"polynomial has {f.n} variables, measure has {mu.n}")


def integrate(f: SparsePolynomial, mu: ProductJacobiMeasure, degree_hint: int | None = None) -> float:
    """Integral of ``f`` against ``mu`` by tensorized Gauss-Jacobi quadrature.

    Monomials factor over coordinates, so each term is a product of 1-D rules
    applied to x_i^e; this is the same value the full tensor grid gives.
    """
    _check_dims(f, mu)
    if degree_hint is not None and degree_hint < f.degree:
        raise InvalidArgument(f"degree_hint {degree_hint} is below deg f = {f.degree}")
    degs = f.coordinate_degrees()
    rules = [mu.rule(i, degree_hint if degree_hint is not None else degs[i]) for i in range(mu.n)]
    total = 0.0
    for alpha, c in f.terms.items():
        total += c * math.prod(float(np.dot(r.weights, r.nodes**e)) for r, e in zip(rules, alpha))
    return total


def basis_table(p: JacobiParams, d: int, nodes, mass_scale: float = 1.0) -> np.ndarray:
    """Orthonormal basis values, shape (len(nodes), d + 1)."""
    return evaluate_family(p, d, nodes, normalized=True, mass_scale=mass_scale)


def weighted_gram_tables(
    mu: ProductJacobiMeasure, d: int, powers: Sequence[set[int]] | Sequence[Sequence[int]]
) -> list[dict[int, np.ndarray]]:
    """Per-coordinate tables G_i[e][h, k] = integral of x^e p_h p_k dmu_i, for h, k <= d.

    ``p_h`` is the orthonormal basis of coordinate ``i`` (orthonormal against
    that coordinate's share of ``mu``). Each table uses a rule exact for
    degree e + 2d.
    """
    tables = []
    for i, p in enumerate(mu.params):
        per_power = {}
        for e in sorted(set(powers[i])):
            rule = mu.rule(i, e + 2 * d)
            V = basis_table(p, d, rule.nodes, mu.coordinate_scale(i))
            per_power[e] = (V * (rule.weights * rule.nodes**e)[:, None]).T @ V
        tables.append(per_power)
    return tables


def inner_product(
    alpha: MultiIndex,
    beta: MultiIndex,
    mu: ProductJacobiMeasure,
    f: SparsePolynomial | None = None,
) -> float:
    """Integral of f * b_alpha * b_beta against mu, with b the orthonormal tensor basis (f = 1 if omitted)."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != mu.n or len(beta) != mu.n:
        raise InvalidArgument("multi-index length does not match the measure")
    if f is None:
        f = SparsePolynomial.constant(mu.n, 1.0)
    _check_dims(f, mu)
    total = 0.0
    for delta, c in f.terms.items():
        prod = c
        for i, p in enumerate(mu.params):
            deg = delta[i] + alpha[i] + beta[i]
            rule = mu.rule(i, deg)
            V = basis_table(p, max(alpha[i], beta[i]), rule.nodes, mu.coordinate_scale(i))
            prod *= float(np.sum(rule.weights * rule.nodes ** delta[i] * V[:, alpha[i]] * V[:, beta[i]]))
        total += prod
    return total
