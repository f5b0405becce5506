"""Jacobi-family orthogonal polynomials on [-1, 1].

Conventions
-----------
Recurrences are written as

    x p_k(x) = a_k p_{k+1}(x) + b_k p_k(x) + c_k p_{k-1}(x),   c_0 = 0.

The unnormalized family is the classical Jacobi standardization
P_k^{(alpha,beta)}, except for the first-kind Chebyshev weight
(alpha = beta = -1/2) where the usual T_k = cos(k arccos x) is used.
The normalized family is orthonormal with respect to the *unscaled*
weight (1-x)^alpha (1+x)^beta; pass ``mass_scale`` to normalize against
a constant multiple of it instead. Recurrence coefficients of the
orthonormal family do not depend on that multiple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import InvalidArgument, NumericFailure


@dataclass(frozen=True)
class JacobiParams:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1 and self.beta > -1):
            raise InvalidArgument(f"Jacobi parameters must exceed -1, got ({self.alpha}, {self.beta})")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    @property
    def is_chebyshev(self) -> bool:
        return self.alpha == -0.5 and self.beta == -0.5

    def reflected(self) -> JacobiParams:
        """Parameters of the weight under x -> -x."""
        return JacobiParams(self.beta, self.alpha)

    def weight(self, x):
        x = np.asarray(x, dtype=float)
        return (1 - x) ** self.alpha * (1 + x) ** self.beta

    def mass(self) -> float:
        """Integral of the weight over [-1, 1]."""
        a, b = self.alpha, self.beta
        return math.exp((a + b + 1) * math.log(2) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))


CHEBYSHEV = JacobiParams(-0.5, -0.5)
CHEBYSHEV_SECOND = JacobiParams(0.5, 0.5)
LEGENDRE = JacobiParams(0.0, 0.0)


@dataclass(frozen=True)
class RecurrenceCoefficients:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    normalized: bool

    def __len__(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class ExtremalRootBounds:
    lower: float  # Dimitrov-Nikolov
    upper: float  # Driver-Jordaan


def _check_params(p) -> JacobiParams:
    if not isinstance(p, JacobiParams):
        raise InvalidArgument(f"expected JacobiParams, got {type(p).__name__}")
    return p


def _classical_coefficients(p: JacobiParams, d: int):
    a, b, c = np.zeros(d), np.zeros(d), np.zeros(d)
    if p.is_chebyshev:
        a[:] = 0.5
        c[:] = 0.5
        a[0] = 1.0
        c[0] = 0.0
        return a, b, c
    al, be = p.alpha, p.beta
    s = al + be
    # k = 0 from P_1 = ((s + 2) x + al - be) / 2; the general formulas are 0/0 when s in {0, -1}
    a[0] = 2.0 / (s + 2)
    b[0] = (be - al) / (s + 2)
    for k in range(1, d):
        t = 2 * k + s
        a[k] = 2 * (k + 1) * (k + s + 1) / ((t + 1) * (t + 2))
        b[k] = (be * be - al * al) / (t * (t + 2))
        c[k] = 2 * (k + al) * (k + be) / (t * (t + 1))
    return a, b, c


def _orthonormal_offdiagonal(p: JacobiParams, d: int) -> np.ndarray:
    """sqrt(a_k c_{k+1}) of the classical recurrence, k = 0..d-1, in closed form."""
    al, be = p.alpha, p.beta
    s = al + be
    out = np.zeros(d)
    for k in range(d):
        if k == 0:
            prod = 4 * (al + 1) * (be + 1) / ((s + 2) ** 2 * (s + 3))
        else:
            t = 2 * k + s
            prod = 4 * (k + 1) * (k + s + 1) * (k + 1 + al) * (k + 1 + be) / ((t + 1) * (t + 2) ** 2 * (t + 3))
        out[k] = math.sqrt(prod)
    return out


def recurrence_coefficients(p: JacobiParams, d: int, normalized: bool = True) -> RecurrenceCoefficients:
    """Coefficients a_k, b_k, c_k for k = 0..d-1."""
    p = _check_params(p)
    if d < 1:
        raise InvalidArgument(f"need d >= 1, got {d}")
    if not normalized:
        a, b, c = _classical_coefficients(p, d)
        return RecurrenceCoefficients(a, b, c, False)
    _, b, _ = _classical_coefficients(p, d)
    off = _orthonormal_offdiagonal(p, d)
    c = np.concatenate([[0.0], off[:-1]])
    return RecurrenceCoefficients(off, b, c, True)


def evaluate_family(p: JacobiParams, d: int, x, normalized: bool = True, mass_scale: float = 1.0) -> np.ndarray:
    """Values p_0(x) .. p_d(x) by forward recurrence; shape ``x.shape + (d + 1,)``."""
    p = _check_params(p)
    if d < 0:
        raise InvalidArgument(f"need d >= 0, got {d}")
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape + (d + 1,))
    if normalized:
        out[..., 0] = 1.0 / math.sqrt(p.mass() * mass_scale)
    else:
        out[..., 0] = 1.0
    if d == 0:
        return out
    rc = recurrence_coefficients(p, d, normalized)
    out[..., 1] = (x - rc.b[0]) * out[..., 0] / rc.a[0]
    for k in range(1, d):
        out[..., k + 1] = ((x - rc.b[k]) * out[..., k] - rc.c[k] * out[..., k - 1]) / rc.a[k]
    return out


def jacobi_matrix(p: JacobiParams, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric order-k Jacobi matrix."""
    rc = recurrence_coefficients(p, k, normalized=True)
    return rc.b.copy(), rc.a[: k - 1].copy()


def tridiagonal_eigh(diag, offdiag, vectors: bool = False):
    """Symmetric tridiagonal eigensolve; eigenvalues ascending."""
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    if diag.size == 1:
        vals = diag.copy()
        return (vals, np.ones((1, 1))) if vectors else vals
    try:
        res = eigh_tridiagonal(diag, offdiag, eigvals_only=not vectors)
    except LinAlgError as exc:
        raise NumericFailure(f"tridiagonal eigensolver failed: {exc}") from exc
    return res


def roots(p: JacobiParams, k: int) -> np.ndarray:
    """Zeros of p_k, ascending, as eigenvalues of the Jacobi matrix."""
    p = _check_params(p)
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    diag, off = jacobi_matrix(p, k)
    return np.sort(tridiagonal_eigh(diag, off))


def smallest_root(p: JacobiParams, k: int) -> float:
    return float(roots(p, k)[0])


def largest_root(p: JacobiParams, k: int) -> float:
    return float(roots(p, k)[-1])


def extremal_root_bounds(p: JacobiParams, k: int) -> ExtremalRootBounds:
    """Closed-form lower (Dimitrov-Nikolov) and upper (Driver-Jordaan) bounds on the smallest zero."""
    p = _check_params(p)
    if k < 2:
        raise InvalidArgument(f"root bounds need k >= 2, got {k}")
    al, be = p.alpha, p.beta
    s = al + be
    upper = -1 + 2 * (be + 1) * (be + 3) / (2 * (k - 1) * (k + s + 2) + (be + 3) * (s + 2))
    E = (2 * k + s) * (k * (2 * k + s) + 2 * (s + 2))
    F = (be - al) * ((s + 6) * k + 2 * s)
    delta = k * k * (k + s + 1) ** 2 + (al + 1) * (be + 1) * (k * k + (s + 4) * k + 2 * s)
    lower = (F - 4 * (k - 1) * math.sqrt(delta)) / E
    return ExtremalRootBounds(lower=lower, upper=upper)
