"""Entropy-conservative two-point fluxes, their fourth-order combination, and
the entropy-stable flux with reconstructed-jump dissipation.

A two-point flux F*(uL, uR) is entropy conservative when
(v(uR) - v(uL)) * F* = psi(uR) - psi(uL) with psi = v*f - q. The closed forms
below satisfy this identically for the square entropy eta = u^2/2, for which
the entropy variable v coincides with u. The generic ratio form
(psi(uR)-psi(uL))/(vR-vL) is kept out of the numerical path (0/0 at equal
states) and lives only in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .reconstruction import InterfaceTrace


class ECOrder(Enum):
    EC2 = 2
    EC4 = 4


@dataclass(frozen=True)
class EntropyPair:
    """Square-entropy pair of a scalar flux: entropy eta, entropy flux q,
    potential psi = v*f - q, entropy variable v = eta'."""

    eta: Callable
    q: Callable
    psi: Callable
    v: Callable


def square_entropy_pair(equation) -> EntropyPair:
    """Entropy pair eta = u^2/2 for the supported equations."""
    if equation.kind == "advection":
        c = equation.speed
        return EntropyPair(
            eta=lambda u: 0.5 * u * u,
            q=lambda u: 0.5 * c * u * u,
            psi=lambda u: 0.5 * c * u * u,
            v=lambda u: u,
        )
    if equation.kind == "burgers":
        return EntropyPair(
            eta=lambda u: 0.5 * u * u,
            q=lambda u: u ** 3 / 3.0,
            psi=lambda u: u ** 3 / 6.0,
            v=lambda u: u,
        )
    raise ValueError(f"no entropy pair for equation kind {equation.kind!r}")


def ec_flux_advection(u_left, u_right, c):
    """Entropy-conservative flux for u_t + c u_x = 0: the arithmetic mean."""
    return 0.5 * c * (np.asarray(u_left, dtype=float) + u_right)


def ec_flux_burgers(u_left, u_right):
    """Entropy-conservative flux for Burgers: (uL^2 + uR^2 + uL uR)/6."""
    u_left = np.asarray(u_left, dtype=float)
    u_right = np.asarray(u_right, dtype=float)
    return (u_left * u_left + u_right * u_right + u_left * u_right) / 6.0


def ec_flux_4th(um1, u0, u1, u2, two_point):
    """Fourth-order entropy-conservative combination of a two-point flux:
    4/3 F*(u0,u1) - 1/6 [F*(um1,u1) + F*(u0,u2)]."""
    return (4.0 / 3.0) * two_point(u0, u1) - (1.0 / 6.0) * (
        two_point(um1, u1) + two_point(u0, u2)
    )


def zero_dissipation(u_left, u_right):
    return np.zeros(np.broadcast(u_left, u_right).shape)


@dataclass(frozen=True)
class FluxScheme:
    """Entropy-conservative core plus a non-negative dissipation coefficient
    a(uL, uR) applied to the reconstructed interface jump."""

    ec_two_point: Callable
    order: ECOrder
    dissipation: Callable


def tecno4_scheme(equation) -> FluxScheme:
    """Fourth-order entropy-stable flux for the given equation.

    Advection uses a = |c|; Burgers the average of absolute cell values.
    """
    if equation.kind == "advection":
        c = equation.speed
        return FluxScheme(
            ec_two_point=lambda a, b: ec_flux_advection(a, b, c),
            order=ECOrder.EC4,
            dissipation=lambda a, b: np.full(np.broadcast(a, b).shape, abs(c)),
        )
    if equation.kind == "burgers":
        return FluxScheme(
            ec_two_point=ec_flux_burgers,
            order=ECOrder.EC4,
            dissipation=lambda a, b: 0.5 * (np.abs(a) + np.abs(b)),
        )
    raise ValueError(f"no flux scheme for equation kind {equation.kind!r}")


def ec_only_scheme(equation, order: ECOrder = ECOrder.EC4) -> FluxScheme:
    """Entropy-conservative flux with the dissipation switched off."""
    base = tecno4_scheme(equation)
    return FluxScheme(ec_two_point=base.ec_two_point, order=order,
                      dissipation=zero_dissipation)


def tecno_flux(um1, u0, u1, u2, trace: InterfaceTrace, scheme: FluxScheme):
    """Entropy-stable interface flux F* - a/2 * (v_plus - v_minus)."""
    if scheme.order is ECOrder.EC4:
        star = ec_flux_4th(um1, u0, u1, u2, scheme.ec_two_point)
    else:
        star = scheme.ec_two_point(u0, u1)
    return star - 0.5 * scheme.dissipation(u0, u1) * trace.jump
