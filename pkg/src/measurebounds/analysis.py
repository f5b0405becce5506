"""Worst-case examples and rate experiments.

Covers the five-diagonal matrix of x^2 + alpha*x in the scaled Chebyshev
basis, its circulant embedding and interlacing chain, the quadratic upper
estimator of a general polynomial, grid baselines, reference minima and
log-log rate fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .dkhl import dkhl_bound
from .errors import InvalidArgument, NumericFailure, ResourceLimit
from .lasserre import BoundResult, DensityCertificate, MomentMatrix, lasserre_bound
from .polycore import SparsePolynomial, enumerate_multiindices
from .quadrature import ProductJacobiMeasure

SQRT2 = math.sqrt(2.0)


# five-diagonal matrix and circulant embedding


def quadratic_chebyshev_matrix(alpha: float, d: int) -> MomentMatrix:
    """Moment matrix of x^2 + alpha*x for the Chebyshev measure scaled by 2/pi, order d + 1."""
    if d < 4:
        raise InvalidArgument(f"need d >= 4, got {d}")
    a, b, c = 0.5, alpha / 2, 0.25
    A = np.zeros((d + 1, d + 1))
    for k in range(d + 1):
        A[k, k] = a
        if k + 1 <= d:
            A[k, k + 1] = A[k + 1, k] = b
        if k + 2 <= d:
            A[k, k + 2] = A[k + 2, k] = c
    # first two rows differ because T0_hat = 1/sqrt(2)
    A[0, 1] = A[1, 0] = alpha / SQRT2
    A[0, 2] = A[2, 0] = 1 / (2 * SQRT2)
    A[1, 1] = 0.75
    return MomentMatrix(enumerate_multiindices(1, d), A)


def circulant_matrix(alpha: float, d: int) -> np.ndarray:
    """Symmetric circulant of order d + 1 with first row (a, b, c, 0, ..., 0, c, b)."""
    if d < 4:
        raise InvalidArgument(f"need d >= 4, got {d}")
    row = np.zeros(d + 1)
    row[0], row[1], row[2], row[-1], row[-2] = 0.5, alpha / 2, 0.25, alpha / 2, 0.25
    return np.array([np.roll(row, k) for k in range(d + 1)])


@dataclass(frozen=True)
class CirculantSpectrum:
    order: int
    a: float
    b: float
    c: float
    eigenvalues: np.ndarray  # indexed by j = 0..order-1, unsorted

    @property
    def sorted(self) -> np.ndarray:
        return np.sort(self.eigenvalues)

    @property
    def lambda3(self) -> float:
        """Third smallest eigenvalue, counted with multiplicity."""
        return float(self.sorted[2])


def circulant_spectrum(alpha: float, d: int) -> CirculantSpectrum:
    if d < 5:
        raise InvalidArgument(f"need d >= 5, got {d}")
    a, b, c = 0.5, alpha / 2, 0.25
    theta = 2 * np.pi * np.arange(d + 1) / (d + 1)
    eig = a + 2 * b * np.cos(theta) + 2 * c * np.cos(2 * theta)
    # exact j <-> d+1-j symmetry, independent of cos rounding
    half = np.arange(d + 1)
    mirror = (d + 1 - half) % (d + 1)
    eig = np.where(half <= mirror, eig, eig[mirror])
    return CirculantSpectrum(d + 1, a, b, c, eig)


@dataclass(frozen=True)
class InterlacingReport:
    lambda_min_Ad: float
    lambda_min_B: float
    lambda3_Cd: float
    holds: bool


def interlacing_chain(alpha: float, d: int, slack: float = 1e-10) -> InterlacingReport:
    """lambda_min(A_d) <= lambda_min(B) <= lambda_3(C_d), B = A_d without its first two rows/columns."""
    if d < 6:
        raise InvalidArgument(f"need d >= 6, got {d}")
    A = quadratic_chebyshev_matrix(alpha, d).entries
    lam_a = float(np.linalg.eigvalsh(A)[0])
    lam_b = float(np.linalg.eigvalsh(A[2:, 2:])[0])
    lam_c = circulant_spectrum(alpha, d).lambda3
    holds = lam_a <= lam_b + slack and lam_b <= lam_c + slack
    return InterlacingReport(lam_a, lam_b, lam_c, holds)


def circulant_gap_bound(alpha: float, d: int) -> float:
    """Taylor bound on lambda_3(C_d) + alpha^2/4: (2 + |alpha|)/2 * (6 pi / (d + 1))^2."""
    return 0.5 * (2 + abs(alpha)) * (6 * math.pi / (d + 1)) ** 2


# reference minima


def _univariate_quadratic_min(c2: float, c1: float) -> float:
    candidates = [c2 + c1, c2 - c1]
    if c2 > 0 and abs(c1) <= 2 * c2:
        candidates.append(-c1 * c1 / (4 * c2))
    return min(candidates)


def closed_form_minimum(f: SparsePolynomial) -> float | None:
    """Exact minimum over [-1,1]^n for constant, linear and separable quadratic f; else None."""
    parts = separable_quadratic_parts(f)
    if parts is None:
        return None
    return f.constant_term() + sum(_univariate_quadratic_min(c2, c1) for c2, c1 in parts)


def separable_quadratic_parts(f: SparsePolynomial) -> list[tuple[float, float]] | None:
    """(c2_i, c1_i) with f = const + sum_i c2_i x_i^2 + c1_i x_i, or None if f is not of that form."""
    parts = [[0.0, 0.0] for _ in range(f.n)]
    for alpha, c in f.terms.items():
        nz = [i for i, e in enumerate(alpha) if e]
        if not nz:
            continue
        if len(nz) > 1 or alpha[nz[0]] > 2:
            return None
        parts[nz[0]][2 - alpha[nz[0]]] = c
    return [tuple(p) for p in parts]


def _axis_grid(n: int, per_axis: int) -> np.ndarray:
    axis = np.linspace(-1.0, 1.0, per_axis)
    return np.array(list(product(axis, repeat=n))) if n > 1 else axis[:, None]


def _gradient(f: SparsePolynomial):
    parts = [f.partial(i) for i in range(f.n)]
    return lambda x: np.array([g(x) for g in parts])


def _projected_gradient_norm(f_grad, x) -> float:
    g = f_grad(x)
    return float(np.linalg.norm(x - np.clip(x - g, -1.0, 1.0)))


def find_minimizer(
    f: SparsePolynomial, seed: int = 0, extra_starts: int = 4, gtol: float = 1e-10
) -> tuple[np.ndarray, float]:
    """Global minimizer over the box by multi-start bounded quasi-Newton plus coordinate polish.

    Starts: the 3^n lattice {-1, 0, 1}^n, the best points of a dense regular
    grid, and ``extra_starts`` seeded uniform points.
    """
    n = f.n
    grad = _gradient(f)
    starts = [np.array(s, dtype=float) for s in product((-1.0, 0.0, 1.0), repeat=n)]
    per_axis = max(3, int(round(2e5 ** (1.0 / n))))
    per_axis = min(per_axis, 201)
    grid = _axis_grid(n, per_axis)
    vals = f.evaluate_many(grid)
    for k in np.argsort(vals)[:5]:
        starts.append(grid[k])
    rng = np.random.default_rng(seed)
    starts.extend(rng.uniform(-1, 1, size=(extra_starts, n)))

    best_x, best_v = None, math.inf
    bounds = [(-1.0, 1.0)] * n
    for x0 in starts:
        res = minimize(lambda x: f(x), x0, jac=grad, method="L-BFGS-B", bounds=bounds,
                       options={"gtol": 1e-14, "ftol": 1e-16, "maxiter": 500})
        x = np.clip(res.x, -1.0, 1.0)
        x = _coordinate_polish(f, x)
        v = f(x)
        if v < best_v:
            best_x, best_v = x, v
    if best_x is None or not math.isfinite(best_v):
        raise NumericFailure("minimizer search produced no finite point")
    best_x = _newton_refine(f, grad, best_x, gtol)
    pg = _projected_gradient_norm(grad, best_x)
    if pg > NEWTON_FAILURE_GRADIENT:
        raise NumericFailure(
            f"minimizer search did not converge: projected gradient {pg:.3e} at {best_x.tolist()}, f = {f(best_x):.16g}"
        )
    return best_x, float(f(best_x))


NEWTON_FAILURE_GRADIENT = 1e-7


def _hessian_at(f: SparsePolynomial, x) -> np.ndarray:
    n = f.n
    H = np.zeros((n, n))
    for i in range(n):
        fi = f.partial(i)
        for j in range(i, n):
            H[i, j] = H[j, i] = fi.partial(j)(x)
    return H


def _newton_refine(f: SparsePolynomial, grad, x: np.ndarray, gtol: float, steps: int = 20) -> np.ndarray:
    """Projected Newton steps on the coordinates not pinned at an active bound."""
    x = x.copy()
    for _ in range(steps):
        if _projected_gradient_norm(grad, x) <= gtol:
            break
        g = grad(x)
        pinned = ((x <= -1.0) & (g > 0)) | ((x >= 1.0) & (g < 0))
        free = ~pinned
        if not free.any():
            break
        H = _hessian_at(f, x)[np.ix_(free, free)]
        try:
            step = np.linalg.solve(H, -g[free])
        except np.linalg.LinAlgError:
            break
        y = x.copy()
        y[free] = np.clip(x[free] + step, -1.0, 1.0)
        if f(y) > f(x) + 1e-15 * max(1.0, abs(f(x))):
            break
        x = y
    return x


def _coordinate_polish(f: SparsePolynomial, x: np.ndarray, sweeps: int = 3) -> np.ndarray:
    x = x.copy()
    for _ in range(sweeps):
        for i in range(f.n):
            def line(t, i=i):
                y = x.copy()
                y[i] = t
                return f(y)

            res = minimize_scalar(line, bounds=(-1.0, 1.0), method="bounded", options={"xatol": 1e-12})
            # the bounded search never lands exactly on an endpoint
            for t in (res.x, -1.0, 1.0):
                if line(t) < f(x):
                    x[i] = t
    return x


def reference_minimum(f: SparsePolynomial, seed: int = 0) -> float:
    """Closed form when available, otherwise the multi-start oracle."""
    exact = closed_form_minimum(f)
    if exact is not None:
        return exact
    return find_minimizer(f, seed)[1]


# quadratic upper estimator


def hessian_norm_max(f: SparsePolynomial, per_axis: int = 101, max_points: int = 10**6) -> float:
    """max over a regular grid of the spectral norm of the Hessian of f."""
    n = f.n
    if per_axis**n > max_points:
        per_axis = max(2, int(max_points ** (1.0 / n)))
    grid = _axis_grid(n, per_axis)
    H = np.zeros((grid.shape[0], n, n))
    for i in range(n):
        fi = f.partial(i)
        for j in range(i, n):
            H[:, i, j] = H[:, j, i] = fi.partial(j).evaluate_many(grid)
    return float(np.max(np.abs(np.linalg.eigvalsh(H))))


@dataclass(frozen=True)
class QuadraticEstimator:
    g: SparsePolynomial
    minimizer: np.ndarray
    c_f: float
    f_min: float


def quadratic_upper_estimator(
    f: SparsePolynomial, minimizer_hint: Sequence[float] | None = None, seed: int = 0
) -> QuadraticEstimator:
    """g(x) = f(a) + grad f(a).(x - a) + C_f |x - a|^2, with a a minimizer of f on the box."""
    if f.degree < 1:
        raise InvalidArgument("the estimator needs a non-constant polynomial")
    if minimizer_hint is None:
        a, fa = find_minimizer(f, seed)
    else:
        a = np.asarray(minimizer_hint, dtype=float)
        if a.shape != (f.n,):
            raise InvalidArgument(f"minimizer hint must have length {f.n}")
        fa = f(a)
    grad = _gradient(f)(a)
    c_f = hessian_norm_max(f) if f.degree >= 2 else 0.0
    n = f.n
    terms = {(0,) * n: fa - float(grad @ a) + c_f * float(a @ a)}
    for i in range(n):
        lin = [0] * n
        lin[i] = 1
        quad = [0] * n
        quad[i] = 2
        terms[tuple(lin)] = grad[i] - 2 * c_f * a[i]
        terms[tuple(quad)] = c_f
    return QuadraticEstimator(SparsePolynomial(n, terms), a, c_f, fa)


def estimator_slack(f: SparsePolynomial, g: SparsePolynomial, per_axis: int = 51) -> float:
    """min over a regular grid of g - f (non-negative when g dominates f)."""
    grid = _axis_grid(f.n, per_axis)
    return float(np.min(g.evaluate_many(grid) - f.evaluate_many(grid)))


# separable quadratics via product densities


def product_density_certificate(
    f: SparsePolynomial, mu: ProductJacobiMeasure, d: int
) -> tuple[float, DensityCertificate]:
    """Product of univariate optimal densities for separable quadratic f.

    Returns the objective value (sum of univariate bounds at degree d plus the
    constant term) and the product density as a certificate over N(n, n*d).
    """
    parts = separable_quadratic_parts(f)
    if parts is None:
        raise InvalidArgument("product densities need f = const + sum_i (c2_i x_i^2 + c1_i x_i)")
    n = f.n
    value = f.constant_term()
    factors = []
    for i, (c2, c1) in enumerate(parts):
        fi = SparsePolynomial(1, {(2,): c2, (1,): c1})
        mu_i = ProductJacobiMeasure((mu.params[i],))
        r = lasserre_bound(fi, mu_i, d, with_certificate=True)
        value += r.value
        factors.append(r.certificate.coefficients)
    index = enumerate_multiindices(n, n * d)
    u = np.zeros(len(index))
    for k, alpha in enumerate(index):
        if all(a <= d for a in alpha):
            u[k] = math.prod(factors[i][alpha[i]] for i in range(n))
    return value, DensityCertificate(index, u, mu)


# grid baselines


def grid_points(kind: str, d: int) -> np.ndarray:
    if d < 1:
        raise InvalidArgument(f"need d >= 1, got {d}")
    if kind == "lobatto":
        pts = np.cos(np.arange(d + 1) * np.pi / d)
        pts[0], pts[-1] = 1.0, -1.0
        if d % 2 == 0:
            pts[d // 2] = 0.0
        return pts
    if kind == "regular":
        return np.linspace(-1.0, 1.0, d + 1)
    raise InvalidArgument(f"unknown grid kind {kind!r}")


def grid_bound(f: SparsePolynomial, d: int, kind: str = "lobatto", max_points: int = 10**7) -> BoundResult:
    """min of f over the tensor grid (d + 1 points per axis)."""
    axis = grid_points(kind, d)
    n = f.n
    if n > 4:
        raise ResourceLimit(f"grid bounds are limited to n <= 4, got n = {n}")
    if (d + 1) ** n > max_points:
        raise ResourceLimit(f"grid of {(d + 1) ** n} points exceeds budget {max_points}")
    best = math.inf
    if n == 1:
        best = float(np.min(f.evaluate_many(axis[:, None])))
    else:
        rest = np.array(list(product(axis, repeat=n - 1)))
        for x1 in axis:
            pts = np.column_stack([np.full(rest.shape[0], x1), rest])
            best = min(best, float(np.min(f.evaluate_many(pts))))
    return BoundResult(best, d, f"grid-{kind}")


# sweeps and rate fits


def compute_bound(
    hierarchy: str, f: SparsePolynomial, mu: ProductJacobiMeasure, d: int, with_certificate: bool = False
) -> BoundResult:
    if hierarchy == "lasserre":
        return lasserre_bound(f, mu, d, with_certificate)
    if hierarchy == "dkhl":
        return dkhl_bound(f, d, with_certificate)
    if hierarchy in ("grid-lobatto", "grid-regular"):
        return grid_bound(f, d, hierarchy.split("-", 1)[1])
    raise InvalidArgument(f"unknown hierarchy {hierarchy!r}")


@dataclass(frozen=True)
class RateFit:
    degrees: np.ndarray
    gaps: np.ndarray
    slope: float
    intercept: float
    r_squared: float


def rate_fit(degrees: Sequence[int], gaps: Sequence[float]) -> RateFit:
    """Least-squares line through (log d, log gap)."""
    d = np.asarray(degrees, dtype=float)
    g = np.asarray(gaps, dtype=float)
    if d.shape != g.shape or d.ndim != 1:
        raise InvalidArgument("degrees and gaps must be 1-D of equal length")
    if d.size < 5:
        raise InvalidArgument(f"need at least 5 points, got {d.size}")
    if np.any(np.diff(d) <= 0) or np.any(d <= 0):
        raise InvalidArgument("degrees must be positive and strictly increasing")
    if np.any(~(g > 1e-14)):
        raise InvalidArgument("all gaps must exceed 1e-14 (a bound reached the minimum exactly)")
    x, y = np.log(d), np.log(g)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return RateFit(d.astype(int), g, float(slope), float(intercept), r2)
