"""Spectral laboratory for the Paneitz operator with its third-order boundary operator.

Closed-form spectra on the periodic cylinder, the unit ball and radial annuli,
an independent determinant oracle, Moebius calibration energies and the
eigenvalue-bound constants they produce.
"""

from .errors import DomainError, NumericalFailure
from .geometry import (
    CONSTANTS,
    AnnulusModel,
    BallModel,
    CylinderModel,
    GeometricConstants,
    ModeIndex,
    alpha_from_volume_ratio,
    laplace_eigenvalue_s3,
    multiplicity_s3,
    vol_s3,
    vol_s4,
)
from .hersch import (
    EnergyResult,
    HerschBound,
    MoebiusParams,
    ball_bound_constant,
    cylinder_moebius_energy,
    hersch_bound_constant,
    hersch_bound_search,
    moebius_center_of_mass,
    moebius_inverse_s3,
    moebius_map_s3,
    sphere_coordinate_energy_sum,
)
from .numerics import (
    QuadratureSpec,
    RootSpec,
    bracket_scan,
    brent_root,
    golden_section_max,
    integrate,
    stable_quadratic_roots,
)
from .oracle import (
    Domain,
    ResidualReport,
    boundary_matrix,
    char_determinant,
    oracle_eigenvalues,
    residual_check,
    solution_basis,
)
from .profiles import Basis, RadialProfile, constant_profile
from .spectra import (
    Branch,
    EigenPair,
    MonotonicityReport,
    QuadraticCoefficients,
    TauStar,
    alpha_from_beta,
    annulus_bound_constant,
    annulus_eigenfunction,
    annulus_eigenpairs,
    annulus_eigenvalues,
    annulus_quadratic_coeffs,
    annulus_zero_mode,
    ball_eigenfunction,
    ball_eigenpair,
    ball_eigenvalue,
    cylinder_eigenpair,
    cylinder_eigenvalue,
    cylinder_static_eigenpair,
    cylinder_static_eigenvalue,
    find_tau_star,
    first_nonzero_eigenvalue,
    gap_ratio,
    gap_ratio_closed_form,
    scan_monotonicity,
    zero_mode_eigenvalue,
    zero_mode_profile,
)

__version__ = "0.1.0"
