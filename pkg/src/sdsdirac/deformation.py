"""Model parameters, derived constants, uncertainty bounds, regime logic.

The deformed commutation relation

    [X, P] = i (1 + alpha X^2 + beta P^2 + sqrt(alpha beta) (PX + XP))

with alpha, beta > 0 induces strictly positive minimal uncertainties in both
position and momentum.  This module holds the model parameters, evaluates the
derived constants every downstream formula consumes,

    omega_tilde = m w + i sqrt(alpha/beta),       |omega_tilde|^2 = m^2 w^2 + alpha/beta,
    xi_tilde    = m w / (alpha + beta m^2 w^2),
    zeta_tilde  = (sqrt(alpha/beta)(1-lam) - m^2 w^2 lam sqrt(beta/alpha))
                  / (alpha + beta m^2 w^2),
    xi = beta xi_tilde,   zeta = beta zeta_tilde,   eta = xi + i zeta,

computes the minimal-uncertainty bounds, and classifies which of the four
ground-state factorization branches are admissible for given parameters.

Regime tests use the sign of the quadratic

    Q(m w) = beta m^2 w^2 - 2 m w + alpha,

which is equivalent to comparing xi_tilde against 1/2 but stays real-valued
when alpha*beta > 1 (where the radical form of the interval endpoints turns
complex).  Q < 0 is the zero-mode regime, Q > 0 the shifted regime; Q = 0 is
rejected as a degenerate boundary.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass

from .errors import ParameterError, RegimeBoundaryError

__all__ = [
    "ModelParams",
    "DerivedConstants",
    "UncertaintyReport",
    "BranchTag",
    "Branch",
    "RegimeAssessment",
    "derive_constants",
    "with_xi",
    "uncertainty_bounds",
    "q_discriminant",
    "classify_regime",
    "make_branch",
    "spin_of_k",
    "k_of",
    "validate_j",
    "validate_spin",
]

HALF = 0.5


def validate_j(j: float) -> float:
    """Check that j is a positive half-odd-integer (1/2, 3/2, ...)."""
    if j <= 0 or abs(2 * j - round(2 * j)) > 1e-12 or round(2 * j) % 2 == 0:
        raise ParameterError(f"j must be one of 1/2, 3/2, 5/2, ...; got {j}")
    return round(2 * j) / 2


def validate_spin(s: float) -> float:
    if abs(abs(s) - HALF) > 1e-12:
        raise ParameterError(f"spin projection s must be +1/2 or -1/2; got {s}")
    return math.copysign(HALF, s)


def k_of(j: float, s: float) -> int:
    """Spin-orbit integer k = s(2j+1); equals +-(j+1/2), never zero."""
    j = validate_j(j)
    s = validate_spin(s)
    return round(math.copysign(j + HALF, s))


def spin_of_k(k: int) -> float:
    if k == 0:
        raise ParameterError("k = s(2j+1) is never zero")
    return math.copysign(HALF, k)


@dataclass(frozen=True)
class ModelParams:
    """Deformation parameters, representation gauge, and oscillator data.

    alpha, beta are the (positive) deformation parameters carrying dimensions
    of inverse length^2 and inverse momentum^2 in natural units hbar = c = 1;
    lam is the free real gauge parameter of the momentum-space representation;
    m and omega are the oscillator mass and frequency.
    """

    alpha: float
    beta: float
    lam: float
    m: float
    omega: float

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "m", "omega"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ParameterError(f"{name} must be positive and finite; got {value}")
        if not math.isfinite(self.lam):
            raise ParameterError(f"lam must be finite; got {self.lam}")


@dataclass(frozen=True)
class DerivedConstants:
    """Constants of the algebra consumed by all downstream formulas."""

    omega_tilde: complex
    omega_tilde_sq: float
    xi_tilde: float
    zeta_tilde: float
    xi: float
    zeta: float
    eta: complex


def derive_constants(params: ModelParams) -> DerivedConstants:
    """Evaluate the derived constants for a validated parameter set.

    xi and xi_tilde are strictly positive; the gauge parameter lam enters
    only zeta_tilde (and hence only the imaginary part of eta).
    """
    a, b, lam, m, w = params.alpha, params.beta, params.lam, params.m, params.omega
    mw = m * w
    denom = a + b * mw * mw
    root_ab = math.sqrt(a / b)
    xi_tilde = mw / denom
    zeta_tilde = (root_ab * (1.0 - lam) - mw * mw * lam / root_ab) / denom
    xi = b * xi_tilde
    zeta = b * zeta_tilde
    return DerivedConstants(
        omega_tilde=complex(mw, root_ab),
        omega_tilde_sq=mw * mw + a / b,
        xi_tilde=xi_tilde,
        zeta_tilde=zeta_tilde,
        xi=xi,
        zeta=zeta,
        eta=complex(xi, zeta),
    )


def with_xi(dc: DerivedConstants, xi: float, beta: float) -> DerivedConstants:
    """Copy of dc with xi replaced (zeta kept), as used by ladder towers.

    The shape-invariance iteration shifts xi by beta per step while zeta is
    conserved; this helper produces the constants of a shifted tower member.
    """
    return dataclasses.replace(
        dc,
        xi=xi,
        xi_tilde=xi / beta,
        eta=complex(xi, dc.zeta),
    )


@dataclass(frozen=True)
class UncertaintyReport:
    """Minimal-uncertainty bounds and their rescaled one-parameter form."""

    gamma: float
    dx_min: float
    dp_min: float
    alpha_bar: float
    beta_bar: float


def uncertainty_bounds(params: ModelParams, mean_x: float = 0.0, mean_p: float = 0.0) -> UncertaintyReport:
    """Minimal position/momentum uncertainties for a state with given means.

    gamma = (sqrt(alpha) <X> + sqrt(beta) <P>)^2 shifts both bounds;
    dx_min = sqrt(beta (1+gamma) / (1 + 2 sqrt(alpha beta))) and symmetrically
    for dp_min.  alpha_bar = alpha/(1+sqrt(alpha beta)) and beta_bar likewise
    are the parameters of the equivalent rescaled (one-deformation-term)
    uncertainty relation; alpha_bar * beta_bar < 1 always.
    """
    a, b = params.alpha, params.beta
    if not (math.isfinite(mean_x) and math.isfinite(mean_p)):
        raise ParameterError("mean_x and mean_p must be finite")
    gamma = (math.sqrt(a) * mean_x + math.sqrt(b) * mean_p) ** 2
    root = math.sqrt(a * b)
    dx_min = math.sqrt(b * (1.0 + gamma) / (1.0 + 2.0 * root))
    dp_min = math.sqrt(a * (1.0 + gamma) / (1.0 + 2.0 * root))
    return UncertaintyReport(
        gamma=gamma,
        dx_min=dx_min,
        dp_min=dp_min,
        alpha_bar=a / (1.0 + root),
        beta_bar=b / (1.0 + root),
    )


class BranchTag(str, enum.Enum):
    """The four ground-state re-factorization branches.

    The factorized radial Hamiltonian admits four (k', xi') choices:
    k' = k or 1-k combined with xi' = xi or beta-xi.  Spin-up (k>0) branches
    keep k' = k; spin-down (k<0) branches take k' = 1-k.
    """

    ZERO_GS = "zero-gs"
    POS_SPIN_SHIFTED = "pos-spin-shifted"
    NEG_SPIN_SAME_XI = "neg-spin-same-xi"
    NEG_SPIN_SHIFTED = "neg-spin-shifted"

    @property
    def s(self) -> float:
        if self in (BranchTag.ZERO_GS, BranchTag.POS_SPIN_SHIFTED):
            return +HALF
        return -HALF

    @property
    def shifted_xi(self) -> bool:
        return self in (BranchTag.POS_SPIN_SHIFTED, BranchTag.NEG_SPIN_SHIFTED)


@dataclass(frozen=True)
class Branch:
    """A concrete branch: tag plus the re-factorized (k', xi') it uses."""

    tag: BranchTag
    s: float
    k_prime: int
    xi_prime: float


def make_branch(tag: BranchTag, params: ModelParams, j: float) -> Branch:
    """Build the Branch record for (tag, j) at the given parameters."""
    j = validate_j(j)
    dc = derive_constants(params)
    k = k_of(j, tag.s)
    k_prime = k if tag.s > 0 else 1 - k
    xi_prime = params.beta - dc.xi if tag.shifted_xi else dc.xi
    return Branch(tag=tag, s=tag.s, k_prime=k_prime, xi_prime=xi_prime)


def q_discriminant(params: ModelParams) -> float:
    """Q(m w) = beta m^2 w^2 - 2 m w + alpha; sign selects the regime."""
    mw = params.m * params.omega
    return params.beta * mw * mw - 2.0 * mw + params.alpha


@dataclass(frozen=True)
class RegimeAssessment:
    """Validity verdict for one branch, with a machine-readable reason."""

    branch: Branch
    valid: bool
    reason: str
    #: For the neg-spin-shifted branch: whether the positivity of its ground
    #: energy is covered by the 4*alpha*beta > 1 argument (None elsewhere).
    epsilon_positive_proven: bool | None = None


def classify_regime(params: ModelParams, j: float, s: float) -> list[RegimeAssessment]:
    """Assess the two branches carrying spin projection s at these parameters.

    For s = +1/2 exactly one of {zero-gs, pos-spin-shifted} is valid, decided
    by sign(Q); for s = -1/2 the same-xi branch is always valid (xi > 0) and
    the shifted one requires Q > 0.  Q = 0 raises RegimeBoundaryError.
    """
    j = validate_j(j)
    s = validate_spin(s)
    q = q_discriminant(params)
    if q == 0.0:
        raise RegimeBoundaryError(
            "Q(m*omega) = 0: parameters sit exactly on the regime boundary, "
            "which belongs to neither branch"
        )
    out: list[RegimeAssessment] = []
    if s > 0:
        out.append(
            RegimeAssessment(
                branch=make_branch(BranchTag.ZERO_GS, params, j),
                valid=q < 0,
                reason="q_negative_zero_mode_regime" if q < 0 else "requires_q_negative",
            )
        )
        out.append(
            RegimeAssessment(
                branch=make_branch(BranchTag.POS_SPIN_SHIFTED, params, j),
                valid=q > 0,
                reason="q_positive_shifted_regime" if q > 0 else "requires_q_positive",
            )
        )
    else:
        out.append(
            RegimeAssessment(
                branch=make_branch(BranchTag.NEG_SPIN_SAME_XI, params, j),
                valid=True,
                reason="xi_positive_always_valid",
            )
        )
        out.append(
            RegimeAssessment(
                branch=make_branch(BranchTag.NEG_SPIN_SHIFTED, params, j),
                valid=q > 0,
                reason="q_positive_shifted_regime" if q > 0 else "requires_q_positive",
                epsilon_positive_proven=4.0 * params.alpha * params.beta > 1.0,
            )
        )
    return out
