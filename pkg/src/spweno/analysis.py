"""Discrete norms, convergence rates, entropy histories and table assembly."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mesh import CellField, build_grid
from .problems import ProblemSpec
from .reconstruction import Scheme, trace_stencil
from .solver import run_problem


def discrete_norm(values, h: float, p) -> float:
    """Discrete L^p norm: (sum |e_i|^p h)^(1/p) for finite p, max |e_i| for
    p = inf."""
    e = np.abs(np.asarray(values, dtype=float))
    if e.size == 0:
        raise ValueError("empty error array")
    if p == np.inf or p == "inf":
        return float(e.max())
    p = float(p)
    if p == 1.0:
        return float(e.sum() * h)
    return float((np.sum(e ** p) * h) ** (1.0 / p))


def convergence_rate(e_coarse: float, e_fine: float,
                     n_coarse: int, n_fine: int) -> float | None:
    """Observed order log(e_coarse/e_fine) / log(n_fine/n_coarse); undefined
    (None) when either error is not positive."""
    if n_fine <= n_coarse:
        raise ValueError("n_fine must exceed n_coarse")
    if e_coarse <= 0.0 or e_fine <= 0.0:
        return None
    return math.log(e_coarse / e_fine) / math.log(n_fine / n_coarse)


@dataclass
class ErrorReport:
    n_cells: int
    l1: float
    linf: float
    rate_l1: float | None = None
    rate_linf: float | None = None


def attach_rates(reports: list[ErrorReport]) -> list[ErrorReport]:
    """Fill consecutive-row convergence rates in place."""
    for prev, cur in zip(reports, reports[1:]):
        cur.rate_l1 = convergence_rate(prev.l1, cur.l1, prev.n_cells, cur.n_cells)
        cur.rate_linf = convergence_rate(prev.linf, cur.linf,
                                         prev.n_cells, cur.n_cells)
    return reports


def recon_error(field: CellField, exact_interface, scheme: Scheme
                ) -> tuple[float, float]:
    """Interface reconstruction error, minus-side plus plus-side norms.

    Measured over the interfaces whose full six-cell window lies in genuine
    interior data (the same range for every scheme, so comparisons are
    like for like); the excluded boundary layer has measure O(h).
    """
    g = field.grid
    u = field.interior
    n = g.n_cells
    m = n - 5
    if m < 1:
        raise ValueError("need at least 6 cells to measure interior interfaces")
    vm2, vm1, v0, v1, v2, v3 = (u[j:j + m] for j in range(6))
    tr = trace_stencil(scheme, vm2, vm1, v0, v1, v2, v3)
    x = g.a + np.arange(3, n - 2) * g.h
    ue = np.asarray(exact_interface(x), dtype=float)
    e_minus = tr.v_minus - ue
    e_plus = tr.v_plus - ue
    l1 = discrete_norm(e_minus, g.h, 1) + discrete_norm(e_plus, g.h, 1)
    linf = discrete_norm(e_minus, g.h, np.inf) + discrete_norm(e_plus, g.h, np.inf)
    return l1, linf


def total_entropy(field: CellField, h: float) -> float:
    """E = sum over interior cells of (u_i^2 / 2) h."""
    u = field.interior
    return float(0.5 * np.sum(u * u) * h)


@dataclass
class EntropyHistory:
    """Entropy samples (t, E(t)) of one run; relative change is measured
    against the initial sample."""

    t: np.ndarray
    entropy: np.ndarray

    @property
    def rel_change(self) -> np.ndarray:
        e0 = self.entropy[0]
        return (self.entropy - e0) / e0

    def rows(self):
        rel = self.rel_change
        return [(float(t), float(e), float(r))
                for t, e, r in zip(self.t, self.entropy, rel)]


class EntropyRecorder:
    """Observer accumulating (t, E) after every accepted step."""

    def __init__(self, h: float):
        self.h = h
        self.samples: list[tuple[float, float]] = []

    def __call__(self, t: float, field: CellField) -> None:
        self.samples.append((t, total_entropy(field, self.h)))


def recon_accuracy_table(problem: ProblemSpec, n_list, scheme: Scheme
                         ) -> list[ErrorReport]:
    """Interface-error refinement table for a static profile."""
    reports = []
    for n in n_list:
        grid = build_grid(problem.domain[0], problem.domain[1], n)
        fld = CellField.sample(grid, problem.initial)
        exact = problem.initial
        l1, linf = recon_error(fld, exact, scheme)
        reports.append(ErrorReport(n_cells=n, l1=l1, linf=linf))
    return attach_rates(reports)


def evolution_error(problem: ProblemSpec, n_cells: int, scheme: Scheme,
                    cfl: float | None = None, t_end: float | None = None
                    ) -> tuple[float, float]:
    """Cell-value error norms against the exact solution at the final time."""
    if problem.exact is None:
        raise ValueError(f"problem {problem.name!r} has no exact solution")
    result = run_problem(problem, n_cells, scheme, cfl=cfl, t_end=t_end)
    t = problem.t_end if t_end is None else t_end
    err = result.interior - problem.exact(result.grid.centers, t)
    return (discrete_norm(err, result.grid.h, 1),
            discrete_norm(err, result.grid.h, np.inf))


def convergence_table(problem: ProblemSpec, n_list, scheme: Scheme,
                      cfl: float | None = None, t_end: float | None = None
                      ) -> list[ErrorReport]:
    """Evolution-error refinement table for a problem with an exact solution."""
    reports = []
    for n in n_list:
        l1, linf = evolution_error(problem, n, scheme, cfl=cfl, t_end=t_end)
        reports.append(ErrorReport(n_cells=n, l1=l1, linf=linf))
    return attach_rates(reports)


def entropy_history(problem: ProblemSpec, n_cells: int, scheme: Scheme,
                    t_end: float | None = None, cfl: float | None = None
                    ) -> EntropyHistory:
    """Run a problem while recording total entropy, including the t = 0 state."""
    grid = build_grid(problem.domain[0], problem.domain[1], n_cells)
    initial = CellField.sample(grid, problem.initial)
    recorder = EntropyRecorder(grid.h)
    recorder(0.0, initial)
    run_problem(problem, n_cells, scheme, cfl=cfl, t_end=t_end,
                observers=(recorder,))
    ts = np.array([s[0] for s in recorder.samples])
    es = np.array([s[1] for s in recorder.samples])
    return EntropyHistory(t=ts, entropy=es)
