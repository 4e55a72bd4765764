"""Special functions: Jacobi polynomials, log-gamma, Gauss-Jacobi quadrature.

Jacobi polynomials are evaluated by the standard three-term recurrence, which
is stable for the moderate degrees (n <= ~64) this package needs.  Everything
Gamma-shaped runs in log space because the exponent a = xi/beta - 1/2 of the
radial weight can exceed 10^2 for weak deformation.

The quadrature rule is built Golub-Welsch style from the Jacobi recurrence
coefficients; it integrates (1-z)^a (1+z)^b times any polynomial of degree
<= 2n-1 exactly and is the workhorse behind all Beta-type norm integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.linalg

from .errors import NumericsError, ParameterError

__all__ = [
    "QuadratureRule",
    "jacobi_eval",
    "jacobi_derivative",
    "log_gamma",
    "log_beta",
    "gauss_jacobi",
]


def _check_exponents(a: float, b: float) -> None:
    if not (a > -1.0 and b > -1.0) or not (math.isfinite(a) and math.isfinite(b)):
        raise ParameterError(f"Jacobi exponents must satisfy a > -1, b > -1; got a={a}, b={b}")


def jacobi_eval(n: int, a: float, b: float, z):
    """Value of the Jacobi polynomial P_n^(a,b)(z) for z in [-1, 1].

    Accepts a scalar or ndarray argument; exact for n = 0, 1 and otherwise
    produced by the three-term recurrence.
    """
    if n < 0 or n != int(n):
        raise ParameterError(f"polynomial degree must be a nonnegative integer; got {n}")
    _check_exponents(a, b)
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < -1.0 - 1e-12) or np.any(z_arr > 1.0 + 1e-12):
        raise ParameterError("Jacobi argument z must lie in [-1, 1]")
    n = int(n)
    p_prev = np.ones_like(z_arr)
    if n == 0:
        return p_prev if np.ndim(z) else float(p_prev)
    p_cur = 0.5 * (a + b + 2.0) * z_arr + 0.5 * (a - b)
    for i in range(2, n + 1):
        c0 = 2.0 * i * (i + a + b) * (2.0 * i + a + b - 2.0)
        c1 = (2.0 * i + a + b - 1.0) * ((2.0 * i + a + b) * (2.0 * i + a + b - 2.0) * z_arr + a * a - b * b)
        c2 = 2.0 * (i + a - 1.0) * (i + b - 1.0) * (2.0 * i + a + b)
        p_prev, p_cur = p_cur, (c1 * p_cur - c2 * p_prev) / c0
    return p_cur if np.ndim(z) else float(p_cur)


def jacobi_derivative(n: int, a: float, b: float, z):
    """d/dz P_n^(a,b)(z) = ((n+a+b+1)/2) P_{n-1}^(a+1,b+1)(z); zero for n = 0."""
    if n < 0 or n != int(n):
        raise ParameterError(f"polynomial degree must be a nonnegative integer; got {n}")
    _check_exponents(a, b)
    if n == 0:
        zeros = np.zeros_like(np.asarray(z, dtype=float))
        return zeros if np.ndim(z) else 0.0
    return 0.5 * (n + a + b + 1.0) * jacobi_eval(n - 1, a + 1.0, b + 1.0, z)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0; raises on the poles x <= 0."""
    if not math.isfinite(x) or x <= 0.0:
        raise ParameterError(f"log_gamma requires x > 0; got {x}")
    return math.lgamma(x)


def log_beta(x: float, y: float) -> float:
    """ln B(x, y) for x, y > 0."""
    return log_gamma(x) + log_gamma(y) - log_gamma(x + y)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss-Jacobi rule: exact for (1-z)^a (1+z)^b * poly(deg <= 2n-1)."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int
    a: float
    b: float

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> complex | float:
        """Integrate f against the (1-z)^a (1+z)^b weight on (-1, 1)."""
        values = np.asarray(f(self.nodes))
        return np.sum(self.weights * values)


def gauss_jacobi(n: int, a: float, b: float) -> QuadratureRule:
    """Golub-Welsch construction of the n-point Gauss-Jacobi rule.

    Nodes are the eigenvalues of the symmetric tridiagonal recurrence matrix;
    weights are mu_0 times the squared first components of its eigenvectors,
    with mu_0 = 2^(a+b+1) B(a+1, b+1).
    """
    if n < 1 or n != int(n):
        raise ParameterError(f"rule order must be a positive integer; got {n}")
    _check_exponents(a, b)
    n = int(n)
    mu0 = math.exp((a + b + 1.0) * math.log(2.0) + log_beta(a + 1.0, b + 1.0))

    diag = np.empty(n)
    diag[0] = (b - a) / (a + b + 2.0)
    k = np.arange(1, n, dtype=float)
    diag[1:] = (b * b - a * a) / ((2.0 * k + a + b) * (2.0 * k + a + b + 2.0))
    off_sq = np.empty(max(n - 1, 0))
    if n > 1:
        off_sq[0] = 4.0 * (a + 1.0) * (b + 1.0) / ((a + b + 2.0) ** 2 * (a + b + 3.0))
        k = np.arange(2, n, dtype=float)
        off_sq[1:] = (
            4.0 * k * (k + a) * (k + b) * (k + a + b)
            / ((2.0 * k + a + b) ** 2 * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b - 1.0))
        )
    try:
        nodes, vecs = scipy.linalg.eigh_tridiagonal(diag, np.sqrt(off_sq))
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:  # pragma: no cover
        raise NumericsError(f"Gauss-Jacobi eigen-decomposition failed: {exc}") from exc
    weights = mu0 * vecs[0, :] ** 2
    order = np.argsort(nodes)
    return QuadratureRule(nodes=nodes[order], weights=weights[order], order=n, a=a, b=b)
