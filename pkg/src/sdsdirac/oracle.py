"""Independent numerical verification of the closed-form spectra.

The oracle never consults the closed forms while computing: it diagonalizes
the dense Hermitian matrix H = B-^H B- assembled from the discretized ladder
operator alone, on the flat-measure theta grid.  Its lowest eigenvalues are
then compared against e_n = (E_n^2 - m^2)/|omega_tilde|^2.  Three built-in
consistency channels guard the oracle itself:

* the SUSY partner B- B-^H must be isospectral to H away from kernels (an
  exact fact of linear algebra for any matrix pair A^H A vs A A^H; the
  rectangular staggered pair adds one structural zero to the partner);
* the expanded second-order form of b+ b- (kinetic + centrifugal + wall
  potential), discretized independently with compact central differences, is
  applied to every computed eigenvector as a residual;
* eigenvalue sets at different gauge parameters lambda must coincide, the two
  Hamiltonians being unitarily equivalent under a pure diagonal phase.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .deformation import DerivedConstants, ModelParams, derive_constants
from .errors import NumericsError, ParameterError
from .radial import RadialGrid, build_hamiltonian, build_partner_hamiltonian
from .spectrum import SpectrumTable

__all__ = [
    "EigenReport",
    "ComparisonReport",
    "diagonalize_h",
    "compare_to_closed_form",
    "lambda_invariance_check",
    "has_zero_mode",
]

_MIN_ORACLE_GRID = 256
_MAX_LEVELS = 12
ZERO_MODE_GAP_FRACTION = 1e-6


@dataclass(frozen=True, eq=False)
class EigenReport:
    """Lowest levels of H and its partner at one grid size."""

    params: ModelParams
    k: int
    grid_size: int
    n_levels: int
    eigenvalues: np.ndarray = field(repr=False)
    partner_eigenvalues: np.ndarray = field(repr=False)
    factorization_residuals: np.ndarray = field(repr=False)
    eigenvectors: np.ndarray = field(repr=False)


def _expanded_factorized_form(
    dc: DerivedConstants, k: int, grid: RadialGrid
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Band coefficients of the expanded b+ b- (independent discretization).

    In theta the product expands to -beta d^2 + 2 i zeta tan(theta) d
    + beta (k^2-k)/sin^2 + ((xi^2+zeta^2)/beta - xi + i zeta)/cos^2
    - 2 k xi - beta k^2 - (xi^2+zeta^2)/beta, discretized with compact
    central differences and Dirichlet ghosts.
    """
    beta = grid.beta
    theta = grid.theta_nodes
    h = grid.h
    xi, zeta = dc.xi, dc.zeta
    eta_sq = (xi * xi + zeta * zeta) / beta
    potential = (
        beta * (k * k - k) / np.sin(theta) ** 2
        + (eta_sq - xi + 1j * zeta) / np.cos(theta) ** 2
        - 2.0 * k * xi
        - beta * k * k
        - eta_sq
    )
    first = 1j * zeta * np.tan(theta) / h  # coefficient of (v_{i+1} - v_{i-1})
    diag = 2.0 * beta / h**2 + potential
    off = -beta / h**2
    return diag, first, np.full(grid.size - 1, off, dtype=complex)


def _apply_expanded(diag, first, off, v: np.ndarray) -> np.ndarray:
    out = diag * v
    out[:-1] += (off + first[:-1]) * v[1:]
    out[1:] += (off - first[1:]) * v[:-1]
    return out


def diagonalize_h(
    dc: DerivedConstants,
    params: ModelParams,
    k: int,
    grid: RadialGrid,
    n_levels: int,
) -> EigenReport:
    """Lowest n_levels of H = B-^H B-, its partner, and form residuals."""
    if grid.size < _MIN_ORACLE_GRID:
        raise ParameterError(f"oracle grid must have at least {_MIN_ORACLE_GRID} nodes")
    if not (1 <= n_levels <= _MAX_LEVELS):
        raise ParameterError(f"n_levels must lie in [1, {_MAX_LEVELS}]; got {n_levels}")
    h_op = build_hamiltonian(dc, k, grid)
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(
            h_op.entries, subset_by_index=[0, n_levels - 1]
        )
        partner = build_partner_hamiltonian(dc, k, grid)
        partner_eigenvalues = scipy.linalg.eigh(
            partner.entries, subset_by_index=[0, n_levels - 1], eigvals_only=True
        )
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericsError(f"Hermitian eigensolver failed: {exc}") from exc

    diag, first, off = _expanded_factorized_form(dc, k, grid)
    spread = float(eigenvalues[-1] - eigenvalues[0]) or 1.0
    residuals = np.empty(n_levels)
    for i in range(n_levels):
        v = eigenvectors[:, i]
        defect = _apply_expanded(diag, first, off, v) - eigenvalues[i] * v
        residuals[i] = np.linalg.norm(defect) / (max(abs(eigenvalues[i]), spread) * np.linalg.norm(v))
    return EigenReport(
        params=params,
        k=k,
        grid_size=grid.size,
        n_levels=n_levels,
        eigenvalues=eigenvalues,
        partner_eigenvalues=partner_eigenvalues,
        factorization_residuals=residuals,
        eigenvectors=eigenvectors,
    )


def has_zero_mode(report: EigenReport) -> bool:
    """Numerical zero mode: lowest eigenvalue <= 1e-6 of the first gap."""
    gap = float(report.eigenvalues[1] - report.eigenvalues[0]) if report.n_levels > 1 else 1.0
    return float(report.eigenvalues[0]) <= ZERO_MODE_GAP_FRACTION * abs(gap)


def _level_residuals(report: EigenReport, table: SpectrumTable) -> np.ndarray:
    if len(table.rows) < report.n_levels:
        raise ParameterError(
            f"table has {len(table.rows)} rows but the report holds {report.n_levels} levels"
        )
    exact = np.array([row.e_n for row in table.rows[: report.n_levels]])
    scale = next((abs(e) for e in exact if abs(e) > 0.0), 1.0)
    denom = np.where(np.abs(exact) > 0.0, np.abs(exact), scale)
    return np.abs(report.eigenvalues - exact) / denom


@dataclass(frozen=True)
class ComparisonReport:
    """Oracle-vs-closed-form residuals, with a convergence estimate if given
    several grid sizes (ascending)."""

    residuals: tuple[float, ...]
    tolerance: float
    passed: bool
    grid_sizes: tuple[int, ...]
    order_estimate: float | None = None
    richardson_residuals: tuple[float, ...] | None = None


def compare_to_closed_form(
    reports: EigenReport | Sequence[EigenReport],
    table: SpectrumTable,
    tolerance: float,
) -> ComparisonReport:
    """Per-level relative residuals of the finest report against the table.

    With two or more reports (ascending grid size) the convergence order is
    estimated from the decay of the per-level errors, and a Richardson
    extrapolation of the two finest grids is scored as well.
    """
    seq = [reports] if isinstance(reports, EigenReport) else sorted(reports, key=lambda r: r.grid_size)
    for r in seq:
        if (r.params, r.k) != (seq[0].params, seq[0].k) or r.n_levels != seq[0].n_levels:
            raise ParameterError("reports must share parameters, k, and level count")
    if table.params != seq[0].params:
        raise ParameterError("table and reports disagree on parameters")
    finest = seq[-1]
    residuals = _level_residuals(finest, table)

    order = None
    richardson = None
    if len(seq) >= 2:
        errs = np.stack([_level_residuals(r, table) for r in seq])
        rates = []
        for lev in range(finest.n_levels):
            col = errs[:, lev]
            if np.all(col[:-1] > 1e-14) and np.all(col[1:] > 1e-15):
                steps = np.log(col[:-1] / col[1:])
                sizes = np.array([r.grid_size + 1 for r in seq], dtype=float)
                rates.extend(steps / np.log(sizes[1:] / sizes[:-1]))
        if rates:
            order = float(np.median(rates))
        exact = np.array([row.e_n for row in table.rows[: finest.n_levels]])
        scale = next((abs(e) for e in exact if abs(e) > 0.0), 1.0)
        denom = np.where(np.abs(exact) > 0.0, np.abs(exact), scale)
        ratio = ((seq[-1].grid_size + 1) / (seq[-2].grid_size + 1)) ** 2
        extrapolated = (ratio * seq[-1].eigenvalues - seq[-2].eigenvalues) / (ratio - 1.0)
        richardson = tuple(np.abs(extrapolated - exact) / denom)
    return ComparisonReport(
        residuals=tuple(float(r) for r in residuals),
        tolerance=tolerance,
        passed=bool(np.all(residuals <= tolerance)),
        grid_sizes=tuple(r.grid_size for r in seq),
        order_estimate=order,
        richardson_residuals=richardson,
    )


def lambda_invariance_check(
    params_a: ModelParams,
    params_b: ModelParams,
    k: int,
    grid: RadialGrid,
    n_levels: int = 8,
) -> float:
    """Max relative eigenvalue difference between two gauges of the same model.

    The two Hamiltonians are unitarily equivalent under the diagonal phase
    (1 - beta p^2)^(i delta_zeta/(2 beta)), so the residual is rounding-level.
    """
    if dataclasses.replace(params_a, lam=0.0) != dataclasses.replace(params_b, lam=0.0):
        raise ParameterError("parameter sets must differ only in the gauge parameter lam")
    rep_a = diagonalize_h(derive_constants(params_a), params_a, k, grid, n_levels)
    rep_b = diagonalize_h(derive_constants(params_b), params_b, k, grid, n_levels)
    scale = np.maximum(np.abs(rep_a.eigenvalues), np.max(np.abs(rep_a.eigenvalues)) * 1e-3)
    scale = np.where(scale > 0.0, scale, 1.0)
    return float(np.max(np.abs(rep_a.eigenvalues - rep_b.eigenvalues) / scale))
