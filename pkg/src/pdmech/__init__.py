"""Classical dynamics of position-dependent-mass systems.

Newton and invariant pictures, factorization-generated Poschl-Teller
potentials, exact phase trajectories and an explicit Runge-Kutta oracle.
"""

from .dynamics import (
    CallablePotential,
    PhaseState,
    PoschlTellerPotential,
    SystemSpec,
    canonical_rhs,
    effective_potential_value,
    hamiltonian_script_value,
    invariant_H_value,
    invariant_rhs,
    lagrangian_value,
    newton_rhs,
    power_value,
    standard_lagrangian_reduction,
    thrust_value,
    zero_potential,
)
from .errors import (
    ConfigError,
    DomainError,
    IntegrationError,
    PDMError,
    QuadratureError,
    RegimeError,
    RootFindingError,
)
from .factorization import (
    AlgebraReport,
    LadderValue,
    f_value,
    g_value,
    invariant_Q_values,
    ladder_values,
    poisson_bracket,
    pt_potential_value,
    q_polar,
    verify_algebra,
)
from .integrator import DriftReport, IntegratorConfig, Method, drift_report, integrate, integrate_picture
from .mass_models import (
    DomainInterval,
    MassFamily,
    MassModel,
    MassRole,
    domain_of,
    effective_mass_at,
    j_integral,
    mass_at,
    mass_derivative_at,
)
from .special import elliptic_e_int
from .trajectories import (
    Trajectory,
    TrajectorySpec,
    analytic_state,
    invert_g,
    oscillation_period,
    phase_from_state,
    sample_trajectory,
)
from .transforms import constant_mass_K, lanczos_equivalent_force, point_transform, tilde_transform

__version__ = "0.1.0"
