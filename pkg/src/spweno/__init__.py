"""Entropy-stable finite-difference solver for 1-D scalar conservation laws
built around a sign-preserving third-order WENO reconstruction."""

from .analysis import (
    EntropyHistory,
    EntropyRecorder,
    ErrorReport,
    convergence_rate,
    convergence_table,
    discrete_norm,
    entropy_history,
    evolution_error,
    recon_accuracy_table,
    recon_error,
    total_entropy,
)
from .entropy_flux import (
    ECOrder,
    EntropyPair,
    FluxScheme,
    ec_flux_4th,
    ec_flux_advection,
    ec_flux_burgers,
    ec_only_scheme,
    square_entropy_pair,
    tecno4_scheme,
    tecno_flux,
)
from .mesh import (
    BoundaryCondition,
    CellField,
    Grid,
    build_grid,
    fill_ghosts,
    pad,
)
from .problems import (
    Equation,
    ProblemSpec,
    advection,
    advection_exact,
    burgers,
    burgers_smooth_exact,
    lookup,
    registry,
)
from .reconstruction import (
    InterfaceTrace,
    JumpRegion,
    Scheme,
    eno2_trace,
    eno3_trace,
    reconstruct_field,
    region_jump,
    spweno_coefficients,
    spweno_jump_region,
    spweno_trace,
    spweno_weights,
    trace_stencil,
    weno3_js_trace,
)
from .solver import (
    BlowUpError,
    SolverConfig,
    cfl_dt,
    evolve,
    rhs,
    run_problem,
    ssp_rk3_step,
)

__version__ = "0.1.0"
