"""Closed-form energy spectra of the four branches and shape invariance.

The factorized radial Hamiltonian b+ b- obeys the shape-invariance relation
b-(k_i, eta_i) b+(k_i, eta_i) = b+(k_{i+1}, eta_{i+1}) b-(k_{i+1}, eta_{i+1})
+ eps_{i+1}, solved by k_{i+1} = k_i + 1, xi_{i+1} = xi_i + beta and zeta
conserved, with

    eps_{i+1} = F(k_{i+1}, xi_{i+1}) - F(k_i, xi_i),
    F(k, xi)  = beta k^2 + 2 k xi + (xi^2 + zeta^2)/beta.

The telescoped partial sums give sum_{j<=n} eps_j = 4n (beta (n+k) + xi), and
E_n^2 - m^2 = |omega_tilde|^2 * (eps_0 + 4n (beta (n+k') + xi')) for a branch
re-factorized at (k', xi').  Eliminating the constants yields the four closed
forms implemented in `branch_formula`; energies are reported as E^2 - m^2
together with the positive root only (E = -m ground states are incompatible
with the coupled first-order system).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .deformation import (
    Branch,
    BranchTag,
    DerivedConstants,
    ModelParams,
    classify_regime,
    derive_constants,
    k_of,
    validate_j,
    validate_spin,
)
from .errors import BranchValidityError, ParameterError

__all__ = [
    "QuantumNumbers",
    "ShapeInvarianceStep",
    "SpectrumRow",
    "SpectrumTable",
    "shape_invariance_step",
    "initial_step",
    "telescoped_energy_sq",
    "ground_state_epsilon",
    "branch_formula",
    "energy_sq_minus_msq",
    "positive_energy",
    "spectrum_table",
    "principal_form",
]

MAX_RADIAL = 64


@dataclass(frozen=True)
class QuantumNumbers:
    """(s, j, n) plus the derived spin-orbit integer and principal number."""

    s: float
    j: float
    n: int
    k: int
    n_principal: int

    @classmethod
    def make(cls, s: float, j: float, n: int) -> "QuantumNumbers":
        s = validate_spin(s)
        j = validate_j(j)
        if n < 0 or n != int(n):
            raise ParameterError(f"radial quantum number n must be a nonnegative integer; got {n}")
        k = k_of(j, s)
        return cls(s=s, j=j, n=int(n), k=k, n_principal=round(2 * n + j - s))


@dataclass(frozen=True)
class ShapeInvarianceStep:
    """One member of the shape-invariance hierarchy."""

    i: int
    k_i: float
    xi_i: float
    zeta_i: float
    epsilon_i: float


def _f_const(beta: float, k: float, xi: float, zeta: float) -> float:
    return beta * k * k + 2.0 * k * xi + (xi * xi + zeta * zeta) / beta


def shape_invariance_step(step: ShapeInvarianceStep, beta: float) -> ShapeInvarianceStep:
    """Advance the hierarchy one level: k by 1, xi by beta, zeta conserved."""
    k_next = step.k_i + 1.0
    xi_next = step.xi_i + beta
    eps_next = _f_const(beta, k_next, xi_next, step.zeta_i) - _f_const(
        beta, step.k_i, step.xi_i, step.zeta_i
    )
    return ShapeInvarianceStep(
        i=step.i + 1, k_i=k_next, xi_i=xi_next, zeta_i=step.zeta_i, epsilon_i=eps_next
    )


def ground_state_epsilon(branch: Branch, dc: DerivedConstants, beta: float, k: int) -> float:
    """Ground-level constant eps_0 of the branch's re-factorization.

    zero-gs: 0; pos-spin-shifted: (beta - 2 xi)(1 + 2k);
    neg-spin-same-xi: (beta + 2 xi)(1 - 2k); neg-spin-shifted:
    4 (beta (1 - k) - xi).  |omega_tilde|^2 * eps_0 equals E_0^2 - m^2.
    """
    if branch.s > 0 and k <= 0 or branch.s < 0 and k >= 0:
        raise BranchValidityError(
            f"branch {branch.tag.value} carries s={branch.s:+.1f} but k={k} has the wrong sign"
        )
    xi = dc.xi
    if branch.tag is BranchTag.ZERO_GS:
        return 0.0
    if branch.tag is BranchTag.POS_SPIN_SHIFTED:
        return (beta - 2.0 * xi) * (1.0 + 2.0 * k)
    if branch.tag is BranchTag.NEG_SPIN_SAME_XI:
        return (beta + 2.0 * xi) * (1.0 - 2.0 * k)
    return 4.0 * (beta * (1.0 - k) - xi)


def initial_step(branch: Branch, dc: DerivedConstants, beta: float, k: int) -> ShapeInvarianceStep:
    """Level-0 hierarchy member seeded at the branch's (k', xi')."""
    eps0 = ground_state_epsilon(branch, dc, beta, k)
    return ShapeInvarianceStep(
        i=0, k_i=float(branch.k_prime), xi_i=branch.xi_prime, zeta_i=dc.zeta, epsilon_i=eps0
    )


def telescoped_energy_sq(
    branch: Branch, dc: DerivedConstants, params: ModelParams, k: int, n: int
) -> float:
    """E_n^2 - m^2 via explicit stepping of the hierarchy (route check)."""
    step = initial_step(branch, dc, params.beta, k)
    total = step.epsilon_i
    for _ in range(n):
        step = shape_invariance_step(step, params.beta)
        total += step.epsilon_i
    return dc.omega_tilde_sq * total


def branch_formula(
    tag: BranchTag, alpha: float, beta: float, m: float, omega: float, j: float, n: int
) -> float:
    """Raw closed form of E_n^2 - m^2 for one branch; pure algebra.

    No validity gating: this kernel is also the object whose alpha, beta -> 0
    limits are asserted (4 n m w and 4 (n+j+1) m w for the two branches with a
    nondeformed limit; the neg-spin-shifted value tends to -4(n+1) m w (n+j+
    3/2)/(j+3/2)-free constant -4 m w at n = 0, exhibiting the absence of one).
    """
    mw = m * omega
    quad = m * m * omega * omega * beta + alpha
    if tag is BranchTag.ZERO_GS:
        return 4.0 * n * (mw + quad * (n + j + 0.5))
    if tag is BranchTag.POS_SPIN_SHIFTED:
        return 4.0 * (n + j + 1.0) * (-mw + quad * (n + 0.5))
    if tag is BranchTag.NEG_SPIN_SAME_XI:
        return 4.0 * (n + j + 1.0) * (mw + quad * (n + 0.5))
    return 4.0 * (n + 1.0) * (-mw + quad * (n + j + 1.5))


def _require_valid(branch: Branch, params: ModelParams, j: float) -> None:
    for assessment in classify_regime(params, j, branch.s):
        if assessment.branch.tag is branch.tag:
            if not assessment.valid:
                raise BranchValidityError(
                    f"branch {branch.tag.value} is invalid here: {assessment.reason}"
                )
            return
    raise BranchValidityError(f"branch {branch.tag.value} not classified for s={branch.s}")


def energy_sq_minus_msq(branch: Branch, params: ModelParams, j: float, n: int) -> float:
    """E_n^2 - m^2 of a valid branch; raises BranchValidityError otherwise."""
    j = validate_j(j)
    if n < 0 or n != int(n):
        raise ParameterError(f"radial quantum number n must be a nonnegative integer; got {n}")
    _require_valid(branch, params, j)
    return branch_formula(branch.tag, params.alpha, params.beta, params.m, params.omega, j, int(n))


def positive_energy(branch: Branch, params: ModelParams, j: float, n: int) -> float:
    """Positive root E_n = +sqrt(m^2 + (E_n^2 - m^2))."""
    return math.sqrt(params.m**2 + energy_sq_minus_msq(branch, params, j, n))


@dataclass(frozen=True)
class SpectrumRow:
    n: int
    n_principal: int
    e2_minus_m2: float
    energy: float
    e_n: float


@dataclass(frozen=True)
class SpectrumTable:
    """Closed-form levels n = 0..n_max of one branch at fixed (params, j)."""

    branch: Branch
    params: ModelParams
    j: float
    rows: tuple[SpectrumRow, ...]
    #: neg-spin-shifted only: positivity of eps_0 is proven by the paper-level
    #: argument only when 4 alpha beta > 1; None for the other branches.
    epsilon_positive_proven: bool | None = None


def spectrum_table(branch: Branch, params: ModelParams, j: float, n_max: int) -> SpectrumTable:
    """Tabulate levels 0..n_max; n_max capped so polynomial degrees stay tame."""
    j = validate_j(j)
    if not (0 <= n_max <= MAX_RADIAL):
        raise ParameterError(f"n_max must lie in [0, {MAX_RADIAL}]; got {n_max}")
    _require_valid(branch, params, j)
    dc = derive_constants(params)
    rows = []
    for n in range(n_max + 1):
        e2 = branch_formula(branch.tag, params.alpha, params.beta, params.m, params.omega, j, n)
        rows.append(
            SpectrumRow(
                n=n,
                n_principal=round(2 * n + j - branch.s),
                e2_minus_m2=e2,
                energy=math.sqrt(params.m**2 + e2),
                e_n=e2 / dc.omega_tilde_sq,
            )
        )
    proven = None
    if branch.tag is BranchTag.NEG_SPIN_SHIFTED:
        proven = 4.0 * params.alpha * params.beta > 1.0
    return SpectrumTable(
        branch=branch, params=params, j=j, rows=tuple(rows), epsilon_positive_proven=proven
    )


def principal_form(branch: Branch, params: ModelParams, j: float, n_principal: int) -> float:
    """E^2 - m^2 restated in the principal quantum number N = 2n + j - s.

    Equivalent to the radial form under the index identity for the branch's
    own spin projection; N must be reachable (same parity, n >= 0).
    """
    j = validate_j(j)
    n_float = (n_principal - j + branch.s) / 2.0
    if abs(n_float - round(n_float)) > 1e-9 or round(n_float) < 0:
        raise ParameterError(
            f"principal number {n_principal} is not reachable for j={j}, s={branch.s:+.1f}"
        )
    _require_valid(branch, params, j)
    mw = params.m * params.omega
    quad = params.m**2 * params.omega**2 * params.beta + params.alpha
    n_p = float(n_principal)
    if branch.tag is BranchTag.ZERO_GS:
        return 2.0 * (n_p - j + 0.5) * (mw + 0.5 * quad * (n_p + j + 1.5))
    if branch.tag is BranchTag.POS_SPIN_SHIFTED:
        return 2.0 * (n_p + j + 2.5) * (-mw + 0.5 * quad * (n_p - j + 1.5))
    if branch.tag is BranchTag.NEG_SPIN_SAME_XI:
        return 2.0 * (n_p + j + 1.5) * (mw + 0.5 * quad * (n_p - j + 0.5))
    return 2.0 * (n_p - j + 1.5) * (-mw + 0.5 * quad * (n_p + j + 2.5))
