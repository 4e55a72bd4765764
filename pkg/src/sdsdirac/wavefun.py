"""Closed-form radial wavefunctions: Jacobi families for all four branches.

Every radial component is a member of the family

    R(p) = C * p^(b+1/2) * (1 - beta p^2)^(a/2 + 1/4 - i zeta/(2 beta))
             * P_n^(a,b)(2 beta p^2 - 1),

with branch-dependent Jacobi exponents

    zero-gs:           a = xi/beta - 1/2,  b = k - 1/2,
    pos-spin-shifted:  a = 1/2 - xi/beta,  b = k - 1/2,
    neg-spin-same-xi:  a = xi/beta - 1/2,  b = 1/2 - k,
    neg-spin-shifted:  a = 1/2 - xi/beta,  b = 1/2 - k.

The small components follow from one application of b- (the coupled
first-order system), which shifts the exponents to (a+1, b+1), (a-1, b+1),
(a+1, b-1), (a-1, b-1) with degrees n-1, n, n, n+1 respectively and the
prefactors implemented in `small_component` (the contiguous-relation algebra
for the two spin-down branches produces no extra factor of beta and lowers,
not raises, the momentum power; both statements are pinned numerically by the
grid intertwining tests).

Closed forms are the source of truth; the ladder recursion is kept as a
verification path only, to avoid accumulating O(n) grid error.  Normalization
constants are evaluated in log space and include the (E_n + m)/E_n factor that
accounts for the small component's share of the joint norm; the same constant
structure is reused on all four branches with their own (a, b, E_n), a choice
validated by the joint-normalization identity rather than assumed.

Phase convention: the imaginary exponent of (1 - beta p^2) is -zeta/(2 beta)
for every component.  All norms, spectra and orthogonality statements are
invariant under flipping that sign, so the convention is unobservable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .deformation import Branch, BranchTag, DerivedConstants, ModelParams
from .errors import DomainConditionError, ParameterError
from .spectrum import QuantumNumbers, branch_formula
from .specfun import gauss_jacobi, jacobi_eval, log_gamma

__all__ = [
    "JacobiForm",
    "RadialWavefunction",
    "branch_exponents",
    "ground_state_wf",
    "normalization_constant",
    "large_component",
    "small_component",
    "radial_wavefunction",
    "joint_norm",
]


@dataclass(frozen=True)
class JacobiForm:
    """One closed-form radial component C p^c (1-b p^2)^(w) P_n^(a,b)(z).

    The momentum power c = b + 1/2 and the real body exponent a/2 + 1/4 are
    derived from the Jacobi exponents; phase_exp carries the gauge-dependent
    imaginary exponent.  Normalizable iff a > -1 and b > -1 (Beta-integral
    convergence); physically acceptable (finite mean-square momentum and
    position) iff additionally a > 0.
    """

    beta: float
    a: float
    b: float
    degree: int
    coefficient: complex
    phase_exp: float
    c: float = field(init=False)
    body_exp: float = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", self.b + 0.5)
        object.__setattr__(self, "body_exp", self.a / 2.0 + 0.25)

    @property
    def is_normalizable(self) -> bool:
        return self.a > -1.0 and self.b > -1.0

    @property
    def is_physical(self) -> bool:
        return self.is_normalizable and self.a > 0.0

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0

    def evaluate(self, p) -> np.ndarray:
        """Sample the form at momenta 0 < p < 1/sqrt(beta)."""
        p_arr = np.asarray(p, dtype=float)
        if np.any(p_arr <= 0.0) or np.any(self.beta * p_arr**2 >= 1.0):
            raise ParameterError("momenta must satisfy 0 < p < 1/sqrt(beta)")
        if self.is_zero:
            return np.zeros_like(p_arr, dtype=complex)
        u = self.beta * p_arr**2
        body = np.exp((self.body_exp + 1j * self.phase_exp) * np.log1p(-u))
        return self.coefficient * p_arr**self.c * body * jacobi_eval(self.degree, self.a, self.b, 2.0 * u - 1.0)

    def norm_sq(self) -> float:
        """Exact weighted norm int |R|^2 dp / sqrt(1 - beta p^2), in log space."""
        if self.is_zero:
            return 0.0
        a, b, n = self.a, self.b, self.degree
        log_g = (
            math.log(2.0 * n + a + b + 1.0)
            + log_gamma(n + 1.0)
            + log_gamma(n + a + b + 1.0)
            - log_gamma(n + a + 1.0)
            - log_gamma(n + b + 1.0)
        )
        return abs(self.coefficient) ** 2 * math.exp(-(b + 1.0) * math.log(self.beta) - math.log(2.0) - log_g)

    def norm_sq_quadrature(self) -> float:
        """Same norm via Gauss-Jacobi in z = 2 beta p^2 - 1 (independent route)."""
        if self.is_zero:
            return 0.0
        a, b, n = self.a, self.b, self.degree
        rule = gauss_jacobi(n + 1, a, b)
        poly_sq = rule.integrate(lambda z: jacobi_eval(n, a, b, z) ** 2)
        return float(
            abs(self.coefficient) ** 2
            * math.exp(-(b + 1.0) * math.log(self.beta) - (a + b + 2.0) * math.log(2.0))
            * poly_sq
        )


def branch_exponents(tag: BranchTag, dc: DerivedConstants, k: int) -> tuple[float, float]:
    """Jacobi exponents (a, b) of the branch's large component."""
    a = dc.xi_tilde - 0.5
    if tag.shifted_xi:
        a = 0.5 - dc.xi_tilde
    b = (k - 0.5) if tag.s > 0 else (0.5 - k)
    return a, b


def _check_domain(tag: BranchTag, dc: DerivedConstants, k: int) -> tuple[float, float]:
    """Validate k sign and endpoint exponents; name the violated inequality."""
    if tag.s > 0 and k <= 0:
        raise DomainConditionError(
            f"branch {tag.value} requires k > 0 (spin projection s = +1/2); got k={k}"
        )
    if tag.s < 0 and k >= 0:
        raise DomainConditionError(
            f"branch {tag.value} requires k < 0 (spin projection s = -1/2); got k={k}"
        )
    a, b = branch_exponents(tag, dc, k)
    if not (a > -1.0 and b > -1.0):
        raise DomainConditionError(
            f"branch {tag.value} exponents (a={a:.6g}, b={b:.6g}) violate the "
            "normalizability condition a > -1, b > -1"
        )
    # Finite mean-square momentum requires a > 0; for the same-xi spin-down
    # branch the regime classification admits the state regardless, so the
    # strengthening is surfaced through JacobiForm.is_physical instead.
    if a <= 0.0 and tag is not BranchTag.NEG_SPIN_SAME_XI:
        bound = "xi_tilde > 1/2" if tag is BranchTag.ZERO_GS else "xi_tilde < 1/2"
        raise DomainConditionError(
            f"branch {tag.value} requires {bound} for a finite mean-square "
            f"momentum (wall exponent a = {a:.6g} must be positive); "
            f"got xi_tilde = {dc.xi_tilde:.6g}"
        )
    return a, b


def ground_state_wf(branch: Branch, dc: DerivedConstants, beta: float, k: int) -> JacobiForm:
    """Unit-norm degree-0 form of the branch's re-factorized ground state.

    |C|^2 = 2 beta^(b+1) Gamma(a+b+2) / (Gamma(a+1) Gamma(b+1)) from the exact
    Beta integral of the squared modulus, evaluated in log space.
    """
    a, b = _check_domain(branch.tag, dc, k)
    log_c_sq = (
        math.log(2.0)
        + (b + 1.0) * math.log(beta)
        + log_gamma(a + b + 2.0)
        - log_gamma(a + 1.0)
        - log_gamma(b + 1.0)
    )
    return JacobiForm(
        beta=beta,
        a=a,
        b=b,
        degree=0,
        coefficient=math.exp(0.5 * log_c_sq),
        phase_exp=-dc.zeta_tilde / 2.0,
    )


def _energy(branch: Branch, params: ModelParams, qn: QuantumNumbers) -> float:
    e2 = branch_formula(branch.tag, params.alpha, params.beta, params.m, params.omega, qn.j, qn.n)
    e_sq = params.m**2 + e2
    if e_sq <= 0.0:
        raise DomainConditionError(
            f"branch {branch.tag.value} has no positive-energy level at n={qn.n} here"
        )
    return math.sqrt(e_sq)


def normalization_constant(
    branch: Branch, dc: DerivedConstants, params: ModelParams, qn: QuantumNumbers
) -> float:
    """Joint-normalization constant of the level-n large component.

    C^2 = beta^(b+1) (2n+a+b+1) n! Gamma(n+a+b+1) / (Gamma(n+a+1)
    Gamma(n+b+1)) * (E_n+m)/E_n; the energy factor carries the small
    component's weight so that |R_1|^2 + |R~_2|^2 integrates to one.
    """
    a, b = _check_domain(branch.tag, dc, qn.k)
    n = qn.n
    energy = _energy(branch, params, qn)
    log_c_sq = (
        (b + 1.0) * math.log(params.beta)
        + math.log(2.0 * n + a + b + 1.0)
        + log_gamma(n + 1.0)
        + log_gamma(n + a + b + 1.0)
        - log_gamma(n + a + 1.0)
        - log_gamma(n + b + 1.0)
        + math.log((energy + params.m) / energy)
    )
    return math.exp(0.5 * log_c_sq)


def large_component(
    branch: Branch, dc: DerivedConstants, params: ModelParams, qn: QuantumNumbers
) -> JacobiForm:
    """Jointly-normalized level-n large radial component R_1;n."""
    a, b = _check_domain(branch.tag, dc, qn.k)
    return JacobiForm(
        beta=params.beta,
        a=a,
        b=b,
        degree=qn.n,
        coefficient=normalization_constant(branch, dc, params, qn),
        phase_exp=-dc.zeta_tilde / 2.0,
    )


def small_component(
    branch: Branch, dc: DerivedConstants, params: ModelParams, qn: QuantumNumbers
) -> JacobiForm:
    """Level-n small radial component R~_2;n = (omega_tilde*/(E_n+m)) b- R_1;n.

    Identically zero on the zero-mode branch at n = 0 (its b+ partner form is
    not normalizable, forcing the ground state to be purely large).
    """
    a, b = _check_domain(branch.tag, dc, qn.k)
    tag, n = branch.tag, qn.n
    if tag is BranchTag.ZERO_GS and n == 0:
        return JacobiForm(
            beta=params.beta, a=a + 1.0, b=b + 1.0, degree=0, coefficient=0.0,
            phase_exp=-dc.zeta_tilde / 2.0,
        )
    c_norm = normalization_constant(branch, dc, params, qn)
    energy = _energy(branch, params, qn)
    omega_conj = complex(params.m * params.omega, -math.sqrt(params.alpha / params.beta))
    beta = params.beta
    if tag is BranchTag.ZERO_GS:
        pref = 2.0 * beta * omega_conj * (n + a + b + 1.0) * c_norm / (energy + params.m)
        aa, bb, deg = a + 1.0, b + 1.0, n - 1
    elif tag is BranchTag.POS_SPIN_SHIFTED:
        pref = -2.0 * beta * omega_conj * (a + n) * c_norm / (energy + params.m)
        aa, bb, deg = a - 1.0, b + 1.0, n
    elif tag is BranchTag.NEG_SPIN_SAME_XI:
        pref = 2.0 * omega_conj * (b + n) * c_norm / (energy + params.m)
        aa, bb, deg = a + 1.0, b - 1.0, n
    else:
        pref = -2.0 * omega_conj * (n + 1.0) * c_norm / (energy + params.m)
        aa, bb, deg = a - 1.0, b - 1.0, n + 1
    return JacobiForm(
        beta=beta, a=aa, b=bb, degree=deg, coefficient=pref,
        phase_exp=-dc.zeta_tilde / 2.0,
    )


@dataclass(frozen=True)
class RadialWavefunction:
    """Jointly-normalized (R_1;n, R~_2;n) pair for one branch and level."""

    large: JacobiForm
    small: JacobiForm
    quantum: QuantumNumbers
    branch: Branch


def radial_wavefunction(
    branch: Branch, dc: DerivedConstants, params: ModelParams, qn: QuantumNumbers
) -> RadialWavefunction:
    return RadialWavefunction(
        large=large_component(branch, dc, params, qn),
        small=small_component(branch, dc, params, qn),
        quantum=qn,
        branch=branch,
    )


def joint_norm(wf: RadialWavefunction, method: str = "quadrature") -> float:
    """int (|R_1|^2 + |R~_2|^2) dp / sqrt(1 - beta p^2); equals 1 when valid.

    method='quadrature' evaluates both Beta-type integrals by Gauss-Jacobi
    rules (exact for these polynomial integrands and independent of the
    closed-form Gamma algebra); method='exact' uses the log-Gamma expressions.
    """
    if method == "quadrature":
        return wf.large.norm_sq_quadrature() + wf.small.norm_sq_quadrature()
    if method == "exact":
        return wf.large.norm_sq() + wf.small.norm_sq()
    raise ParameterError(f"unknown method {method!r}")
