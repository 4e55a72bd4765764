"""Dirac oscillator on the Snyder-de Sitter deformed algebra.

Library + CLI computing the exact solution of the three-dimensional Dirac
oscillator under the two-parameter deformed commutation relations that induce
minimal uncertainties in both position and momentum: closed-form energy
spectra for all four ground-state branches, Jacobi-polynomial radial
wavefunctions, minimal-uncertainty bounds, and an independent finite-
difference diagonalization oracle that verifies every closed form.
"""

from .deformation import (
    Branch,
    BranchTag,
    DerivedConstants,
    ModelParams,
    RegimeAssessment,
    UncertaintyReport,
    classify_regime,
    derive_constants,
    make_branch,
    q_discriminant,
    uncertainty_bounds,
)
from .errors import (
    BranchValidityError,
    DivergenceError,
    DomainConditionError,
    GridMismatchError,
    NumericsError,
    ParameterError,
    RegimeBoundaryError,
    SdsDiracError,
)
from .oracle import (
    ComparisonReport,
    EigenReport,
    compare_to_closed_form,
    diagonalize_h,
    has_zero_mode,
    lambda_invariance_check,
)
from .radial import (
    GridFunction,
    OperatorMatrix,
    RadialGrid,
    build_b_minus,
    build_b_plus,
    build_hamiltonian,
    build_partner_hamiltonian,
    inner_product,
    make_grid,
    p_squared_expectation,
)
from .specfun import QuadratureRule, gauss_jacobi, jacobi_derivative, jacobi_eval, log_gamma
from .spectrum import (
    QuantumNumbers,
    ShapeInvarianceStep,
    SpectrumTable,
    branch_formula,
    energy_sq_minus_msq,
    ground_state_epsilon,
    positive_energy,
    principal_form,
    shape_invariance_step,
    spectrum_table,
)
from .wavefun import (
    JacobiForm,
    RadialWavefunction,
    ground_state_wf,
    joint_norm,
    large_component,
    normalization_constant,
    radial_wavefunction,
    small_component,
)

__version__ = "0.1.0"
