"""Equation definitions, benchmark problems and exact solutions.

The registry holds the experiments the solver and harness reproduce: a
reconstruction-accuracy profile, three linear-advection tests and three
Burgers tests (smooth, shock, rarefaction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import BoundaryCondition


@dataclass(frozen=True)
class Equation:
    """Scalar conservation law u_t + f(u)_x = 0."""

    kind: str
    f: Callable
    fprime: Callable
    speed: float | None = None


def advection(c: float = 1.0) -> Equation:
    def f(u):
        return c * np.asarray(u, dtype=float)

    def fprime(u):
        return np.full(np.shape(u), c)

    return Equation("advection", f, fprime, speed=float(c))


def burgers() -> Equation:
    def f(u):
        u = np.asarray(u, dtype=float)
        return 0.5 * u * u

    def fprime(u):
        return np.asarray(u, dtype=float)

    return Equation("burgers", f, fprime)


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark: equation, domain, data, run parameters and, when
    available, the exact solution u(x, t)."""

    name: str
    equation: Equation
    domain: tuple[float, float]
    initial: Callable
    bc: BoundaryCondition
    t_end: float
    cfl: float
    exact: Callable | None = None
    default_n: int | None = None


def advection_exact(x, t, u0, c, domain, bc):
    """Transport solution u0(x - c t), wrapped into the domain when periodic."""
    x = np.asarray(x, dtype=float)
    foot = x - c * t
    if bc is BoundaryCondition.PERIODIC:
        a, b = domain
        foot = a + np.mod(foot - a, b - a)
    return u0(foot)


def burgers_smooth_exact(x, t, u0, u0_prime=None, tol=1.0e-13, max_iter=100):
    """Pre-shock Burgers solution from the characteristic equation
    u = u0(x - u t), solved pointwise by damped Newton iteration.

    Valid only before the breaking time of the profile; non-convergence
    raises, which typically signals t too close to breaking.
    """
    if u0_prime is None:
        delta = 1.0e-7

        def u0_prime(z):
            return (u0(z + delta) - u0(z - delta)) / (2.0 * delta)

    def solve_one(xi):
        u = float(u0(xi))
        r = u - float(u0(xi - u * t))
        for _ in range(max_iter):
            if abs(r) < tol:
                return u
            slope = 1.0 + t * float(u0_prime(xi - u * t))
            step = r / slope
            u_new = u - step
            r_new = u_new - float(u0(xi - u_new * t))
            # damp on residual increase (slope may be poor near breaking)
            while abs(r_new) > abs(r) and abs(step) > 1.0e-16 * (1.0 + abs(u)):
                step *= 0.5
                u_new = u - step
                r_new = u_new - float(u0(xi - u_new * t))
            u, r = u_new, r_new
        raise RuntimeError(
            f"characteristic iteration did not converge at x={xi}, t={t}"
        )

    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return solve_one(float(x))
    return np.array([solve_one(float(xi)) for xi in x])


def _step_initial(left: float, right: float) -> Callable:
    # cell centers never land exactly on 0 for the even meshes used here;
    # a tie goes to the left state for determinism
    def u0(x):
        return np.where(np.asarray(x, dtype=float) <= 0.0, left, right)

    return u0


def _burgers1_initial(x):
    return 1.0 + 0.5 * np.sin(np.pi * np.asarray(x, dtype=float))


def _burgers1_initial_prime(x):
    return 0.5 * np.pi * np.cos(np.pi * np.asarray(x, dtype=float))


BURGERS1_BREAK_TIME = 2.0 / np.pi


def registry() -> dict[str, ProblemSpec]:
    """All named problems, keyed by name."""
    adv = advection(1.0)
    brg = burgers()
    pi = np.pi

    def sine(x):
        return np.sin(np.asarray(x, dtype=float))

    def sine4(x):
        return np.sin(np.asarray(x, dtype=float)) ** 4

    def inclined_sine(x):
        x = np.asarray(x, dtype=float)
        return np.sin(10.0 * pi * x) + x

    step31 = _step_initial(3.0, -1.0)
    step_m21 = _step_initial(-2.0, 1.0)

    def burgers1_exact(x, t):
        return burgers_smooth_exact(x, t, _burgers1_initial,
                                    _burgers1_initial_prime)

    def burgers2_exact(x, t):
        # shock started at 0 moving at speed (f(3)-f(-1))/(3-(-1)) = 1
        return np.where(np.asarray(x, dtype=float) <= t, 3.0, -1.0)

    def burgers3_exact(x, t):
        x = np.asarray(x, dtype=float)
        if t == 0.0:
            return step_m21(x)
        fan = x / t
        return np.where(x < -2.0 * t, -2.0, np.where(x > t, 1.0, fan))

    problems = [
        ProblemSpec(
            name="recon_accuracy", equation=adv, domain=(0.0, 1.0),
            initial=inclined_sine, bc=BoundaryCondition.NEUMANN,
            t_end=0.0, cfl=0.4,
            exact=lambda x, t: inclined_sine(x),
        ),
        ProblemSpec(
            name="adv1", equation=adv, domain=(-pi, pi), initial=sine,
            bc=BoundaryCondition.PERIODIC, t_end=0.5, cfl=0.4,
            exact=lambda x, t: advection_exact(x, t, sine, 1.0, (-pi, pi),
                                               BoundaryCondition.PERIODIC),
        ),
        ProblemSpec(
            name="adv2", equation=adv, domain=(-pi, pi), initial=sine4,
            bc=BoundaryCondition.PERIODIC, t_end=0.5, cfl=0.5,
            exact=lambda x, t: advection_exact(x, t, sine4, 1.0, (-pi, pi),
                                               BoundaryCondition.PERIODIC),
        ),
        ProblemSpec(
            name="adv3", equation=adv, domain=(-1.0, 1.0), initial=step31,
            bc=BoundaryCondition.NEUMANN, t_end=0.5, cfl=0.4, default_n=100,
            exact=lambda x, t: np.where(np.asarray(x, dtype=float) <= t,
                                        3.0, -1.0),
        ),
        ProblemSpec(
            name="burgers1", equation=brg, domain=(-1.0, 1.0),
            initial=_burgers1_initial, bc=BoundaryCondition.PERIODIC,
            t_end=0.3, cfl=0.4, exact=burgers1_exact,
        ),
        ProblemSpec(
            name="burgers2", equation=brg, domain=(-1.0, 1.0),
            initial=step31, bc=BoundaryCondition.NEUMANN, t_end=0.45,
            cfl=0.4, default_n=100, exact=burgers2_exact,
        ),
        ProblemSpec(
            name="burgers3", equation=brg, domain=(-1.0, 1.0),
            initial=step_m21, bc=BoundaryCondition.NEUMANN, t_end=0.2,
            cfl=0.4, default_n=100, exact=burgers3_exact,
        ),
    ]
    return {p.name: p for p in problems}


def lookup(name: str) -> ProblemSpec:
    problems = registry()
    try:
        return problems[name]
    except KeyError:
        available = ", ".join(sorted(problems))
        raise ValueError(f"unknown problem {name!r}; available: {available}") from None
