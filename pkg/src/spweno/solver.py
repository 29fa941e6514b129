"""Semi-discrete right-hand side and SSP-RK3 time integration."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .entropy_flux import FluxScheme, tecno4_scheme, tecno_flux
from .mesh import BoundaryCondition, CellField, Grid, build_grid, pad
from .problems import Equation, ProblemSpec
from .reconstruction import Scheme, reconstruct_field


class BlowUpError(RuntimeError):
    """Non-finite values appeared during a solve."""

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


@dataclass
class SolverConfig:
    equation: Equation
    scheme: Scheme = Scheme.SPWENO
    bc: BoundaryCondition = BoundaryCondition.PERIODIC
    cfl: float = 0.4
    t_end: float = 0.0
    flux: FluxScheme | None = None
    fixed_dt: float | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.cfl <= 1.0:
            raise ValueError(f"cfl must be in (0, 1], got {self.cfl}")
        if self.t_end < 0.0:
            raise ValueError(f"t_end must be non-negative, got {self.t_end}")
        if self.flux is None:
            self.flux = tecno4_scheme(self.equation)


def interface_fluxes(field: CellField, config: SolverConfig) -> np.ndarray:
    """Entropy-stable flux at every interface 0..n_cells."""
    n = field.grid.n_cells
    traces = reconstruct_field(field, config.scheme, config.bc)
    p = pad(field.interior, config.bc, 2)
    m = n + 1
    um1, u0, u1, u2 = (p[j:j + m] for j in range(4))
    return tecno_flux(um1, u0, u1, u2, traces, config.flux)


def rhs(field: CellField, config: SolverConfig) -> CellField:
    """Flux-difference tendency -(F_{i+1/2} - F_{i-1/2}) / h per cell."""
    fluxes = interface_fluxes(field, config)
    dudt = -(fluxes[1:] - fluxes[:-1]) / field.grid.h
    if not np.all(np.isfinite(dudt)):
        raise BlowUpError("non-finite right-hand side (solution blow-up)")
    return CellField.from_interior(field.grid, dudt)


def cfl_dt(field: CellField, config: SolverConfig, h: float,
           t_remaining: float = np.inf) -> float:
    """CFL step h*cfl/max|f'(u)|, clamped so the run lands on t_end exactly.

    A stationary field (zero wave speed) falls back to dt = cfl*h.
    """
    speed = float(np.max(np.abs(config.equation.fprime(field.interior))))
    dt = config.cfl * h if speed == 0.0 else config.cfl * h / speed
    return min(dt, t_remaining)


def ssp_rk3_step(field: CellField, dt: float, config: SolverConfig,
                 rhs_fn: Callable[[CellField], CellField] | None = None) -> CellField:
    """One Shu-Osher SSP-RK3 step: three forward-Euler stages combined
    convexly with weights (1, 1/4, 2/3)."""
    if dt <= 0.0:
        raise ValueError(f"dt must be positive, got {dt}")
    if rhs_fn is None:
        def rhs_fn(f):
            return rhs(f, config)
    grid = field.grid
    u = field.interior
    u1 = u + dt * rhs_fn(field).interior
    s1 = CellField.from_interior(grid, u1)
    u2 = 0.75 * u + 0.25 * (u1 + dt * rhs_fn(s1).interior)
    s2 = CellField.from_interior(grid, u2)
    u3 = u / 3.0 + (2.0 / 3.0) * (u2 + dt * rhs_fn(s2).interior)
    if not np.all(np.isfinite(u3)):
        raise BlowUpError("non-finite stage values (solution blow-up)")
    return CellField.from_interior(grid, u3)


def evolve(initial: CellField, config: SolverConfig,
           observers: Iterable[Callable[[float, CellField], None]] = ()) -> CellField:
    """March the field to t_end with CFL-controlled SSP-RK3 steps.

    Observers are called with (t, field) after every accepted step.
    """
    observers = tuple(observers)
    field = initial
    t = 0.0
    t_end = config.t_end
    eps = 1.0e-12 * max(1.0, t_end)
    while t_end - t > eps:
        remaining = t_end - t
        if config.fixed_dt is not None:
            dt = min(config.fixed_dt, remaining)
        else:
            dt = cfl_dt(field, config, field.grid.h, remaining)
        last = dt >= remaining
        try:
            field = ssp_rk3_step(field, dt, config)
        except BlowUpError as exc:
            raise BlowUpError(f"{exc} at t = {t:.6g}", time=t) from None
        t = t_end if last else t + dt
        for obs in observers:
            obs(t, field)
    return field


@dataclass
class RunResult:
    grid: Grid
    field: CellField
    config: SolverConfig

    @property
    def interior(self) -> np.ndarray:
        return self.field.interior


def run_problem(problem: ProblemSpec, n_cells: int, scheme: Scheme,
                cfl: float | None = None, t_end: float | None = None,
                fixed_dt: float | None = None,
                observers: Iterable[Callable] = ()) -> RunResult:
    """Solve a registry problem on an n-cell mesh and return the final field."""
    grid = build_grid(problem.domain[0], problem.domain[1], n_cells)
    field = CellField.sample(grid, problem.initial)
    config = SolverConfig(
        equation=problem.equation,
        scheme=scheme,
        bc=problem.bc,
        cfl=problem.cfl if cfl is None else cfl,
        t_end=problem.t_end if t_end is None else t_end,
        fixed_dt=fixed_dt,
    )
    final = evolve(field, config, observers)
    return RunResult(grid=grid, field=final, config=config)
