"""Cornell potential (-a/r + b*r) spectral analysis in N >= 3 dimensions.

Exact Coulomb sector, Airy-function asymptotics, r-dependent energy
correction profile with its critical radius, Coulomb-versus-linear
dominance classification, and an independent finite-difference/shooting
eigenvalue engine that supplies the exact energies.
"""

from .params import SystemParams, effective_potential, lambda_param
from .specfun import AiryValue, airy, airy_log_deriv, gamma_fn, laguerre
from .coulomb import (
    CoulombState,
    big_r_of_g,
    coulomb_energy,
    coulomb_peak_radius,
    coulomb_state,
    coulomb_wavefunction,
    g_map,
    r_of_g,
)
from .asymptotic import (
    AsymptoticModel,
    CriticalRadius,
    RootBracket,
    airy_ode_residual,
    airy_ode_residual_fd,
    asymptotic_peak_radius,
    brent,
    delta_e_profile,
    f_log_deriv,
    f_value,
    solve_r_delta_e,
    susy_delta_e,
)
from .oracle import (
    EigenResult,
    RadialGrid,
    auto_grid,
    outer_turning_radius,
    solve_eigenvalue_matrix,
    solve_eigenvalue_shooting,
)
from .analysis import (
    TABLES,
    Regime,
    SpectralResult,
    TableReport,
    TableRow,
    TableSpec,
    analyze,
    first_order_pt,
    reproduce_table,
)
from .errors import (
    BracketInvalid,
    ConvergenceError,
    DomainTooSmall,
    GridTooCoarse,
    NoRootError,
    SolverError,
)

__version__ = "0.1.0"
