"""IMEX-BDF integration and stability analysis for constant-delay systems."""

__version__ = "0.1.0"

from .benchmarks import (
    MolGrid,
    PROBLEM_BUILDERS,
    burgers_delayed_matrix,
    burgers_mol,
    example1,
    example2,
    linear_pdde_mol,
    make_problem,
    toeplitz_eigenvalues,
)
from .exceptions import (
    CurvePoleError,
    DefinitenessError,
    DegeneratePairingError,
    DegeneratePolynomialError,
    FactorizationError,
    ImexDdeError,
    NotSimultaneouslyDiagonalizableError,
    RadiusDomainError,
    ShapeError,
    StepSizeError,
    UnsupportedOrderError,
)
from .fov import (
    FovEstimate,
    PairedSpectrum,
    StepSizeReport,
    asymptotic_stability_check,
    commutes,
    fov,
    fp_matrix,
    paired_generalized_eigenvalues,
    step_bound_fov,
    step_bound_simdiag,
)
from .methods import (
    ImexCoefficients,
    convergence_rate,
    imex_bdf_coefficients,
    method_from_tag,
)
from .problems import DelayProblem, stability_matrices, validate_problem
from .regions import (
    CharPolynomials,
    StabilityCurve,
    bdf2_critical_theta,
    bdf2_curve_modulus_sq,
    boundary_min_distance,
    boundary_point,
    char_equation_stable,
    char_polynomial_coefficients,
    char_roots,
    classify_roots,
    disk_radius,
    stability_boundary,
    unconditional_radius,
    z_for_radius,
)
from .solver import (
    ConvergenceStudy,
    HistoryBuffer,
    Trajectory,
    convergence_study,
    integrate,
    max_trajectory_error,
)
