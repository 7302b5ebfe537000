"""Steady 2D incompressible flow and magnetohydrostatic boundary-value solvers
on the periodic strip S1 x (0, L).

Two routes are implemented and cross-checked: the semilinear stream-function
(elliptic) method for cases A and D, and the vorticity-transport fixed point
for cases B, C and G, together with pressure recovery, the case-C
compatibility operator, a magnetohydrostatic facade and residual diagnostics.
"""

from .diagnostics import (
    bernoulli_transport_check,
    boundary_check,
    energy_functional,
    euler_residual,
)
from .divcurl import solve_div_curl
from .driver import Solution, make_base_flow, solve_bvp
from .errors import (
    CompatibilityViolated,
    IncompatibleTraces,
    InvalidConfig,
    MassImbalance,
    MultiValuedPressure,
    NoConvergence,
    NonPositiveInflow,
    NotMonotone,
    PathDependence,
    SteadyBvpError,
    TangencyDetected,
    UnsupportedCase,
)
from .fixedpoint import (
    BaseFlow,
    CaseData,
    boundary_vorticity,
    gamma_case_B,
    gamma_case_C,
    gamma_case_G,
    iterate,
)
from .gradshafranov import (
    Diffeomorphism,
    build_profile,
    build_stream_trace,
    invert_monotone,
    solve_case_A,
    solve_case_D,
)
from .grid import (
    BoundaryTrace,
    ScalarField,
    StripGrid,
    VectorField,
    bernoulli,
    curl2d,
    ddx,
    ddy,
    discrete_holder_seminorm,
    div2d,
    flux_through_C,
    perp_gradient,
)
from .mhs import MhsState, euler_to_mhs, mhs_residual, mhs_to_euler, solve_mhs
from .poisson import apply_discrete_laplacian, solve_poisson_dirichlet, solve_semilinear
from .pressure import compatibility_lambda, recover_pressure, solve_case_C_full
from .problem import BvpSpec
from .profiles import ProfileFunction
from .report import SolveReport
from .transport import backtrace, compute_flow_map, integrate_flow, slope_field, solve_transport

__version__ = "0.1.0"
