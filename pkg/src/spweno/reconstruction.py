"""Interface-value reconstructions for entropy-stable fluxes.

The central scheme is a third-order WENO whose weights are chosen so that the
jump in the reconstructed states at every interface has the same sign as the
jump in the cell values ("sign property"), the key requirement for provable
entropy stability of the jump-dissipation flux. ENO-2, ENO-3 and the classical
WENO-3 of Jiang and Shu are provided as comparators behind the same interface.

All trace functions accept scalars or equal-length arrays and are applied
per interface. For the interface between cells i and i+1 the naming is

    vm2, vm1, v0, v1, v2, v3  ->  cells i-2, i-1, i, i+1, i+2, i+3

with jumps d_left = v0-vm1, d_mid = v1-v0, d_right = v2-v1 and jump ratios
theta_plus = d_left/d_mid, theta_minus_next = d_right/d_mid.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

from .mesh import BoundaryCondition, CellField, pad

# Jiang-Shu regularization and ideal weights for the WENO-3 comparator.
WENO_EPS = 1.0e-6
WENO_IDEAL = (2.0 / 3.0, 1.0 / 3.0)


class Scheme(str, Enum):
    SPWENO = "spweno"
    ENO2 = "eno2"
    ENO3 = "eno3"
    WENO3 = "weno3"


class JumpRegion(IntEnum):
    """Closed-form classification of the sign-preserving WENO jump."""

    OMEGA0 = 0  # reconstructed jump vanishes
    OMEGA1 = 1  # jump = (d_mid - d_left) / 2
    OMEGA2 = 2  # jump = (d_mid - d_right) / 2
    OMEGA3 = 3  # jump = d_mid - (d_left + d_right) / 2


@dataclass(frozen=True)
class InterfaceTrace:
    """Reconstructed states v_minus/v_plus at an interface and their jump."""

    v_minus: np.ndarray
    v_plus: np.ndarray
    jump: np.ndarray


def stencil_width(scheme: Scheme) -> int:
    """Ghost cells needed per side to trace every interface of a field.

    ENO-3 may shift its quadratic stencil two cells away from the interface,
    one cell further than the fourth-order flux needs.
    """
    return 3 if scheme is Scheme.ENO3 else 2


def _c_map(theta_a: float | np.ndarray, theta_b: float | np.ndarray) -> np.ndarray:
    """Minus-side weight coefficient of the sign-preserving WENO map.

    Four exhaustive branches over (theta_a, theta_b); the plus-side
    coefficient is this map with swapped arguments. Branch predicates are
    exact floating comparisons on purpose: the sign property and the jump
    bound hold branch by branch, so points that round across a branch
    boundary are still feasible.
    """
    ta = np.asarray(theta_a, dtype=float)
    tb = np.asarray(theta_b, dtype=float)
    den = 1.0 - ta
    num = 1.0 - tb
    ta_one = den == 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        psi_p = num / np.where(ta_one, 1.0, den)
        # reciprocal ratio computed directly, not as 1/psi_p, so a tiny
        # psi_p cannot overflow it
        psi_m = den / np.where(num == 0.0, 1.0, num)
        f_p = 1.0 / (1.0 + psi_p)
        f_m = 1.0 / (1.0 + psi_m)
        on_line = 0.125 * f_p / (f_p * f_p + f_m * f_m)

    negative = ~ta_one & (psi_p < 0.0)
    nonneg = ~ta_one & (psi_p >= 0.0)
    c = np.where(negative & (psi_p != -1.0), on_line, 0.0)
    c = np.where(ta_one | (nonneg & (np.abs(ta) <= 1.0)), -0.375, c)
    c = np.where(nonneg & (np.abs(ta) > 1.0), 0.125, c)
    # the exact map stays inside the box; clipping only removes last-ulp
    # rounding overshoot so downstream weights are in [0, 1] bitwise
    return np.clip(c, -0.375, 0.125)


def spweno_coefficients(theta_plus, theta_minus_next):
    """Weight coefficients (c1, c2) for given jump ratios.

    Caller guarantees the interface jump is nonzero so the ratios are
    defined. c2 is the same map with the arguments swapped, which gives the
    mirror symmetry c1(a, b) == c2(b, a) identically.
    """
    return _c_map(theta_plus, theta_minus_next), _c_map(theta_minus_next, theta_plus)


def spweno_weights(c1, c2):
    """Stencil weights (w0, w1, wt0, wt1) from the coefficients."""
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    return 0.75 + 2.0 * c1, 0.25 - 2.0 * c1, 0.25 - 2.0 * c2, 0.75 + 2.0 * c2


def spweno_trace(vm1, v0, v1, v2) -> InterfaceTrace:
    """Sign-preserving WENO-3 trace at the interface between v0 and v1.

    A vanishing interface jump selects w1 = wt0 = 0, collapsing both sides
    to the central average. When the outer jump ratios straddle 1 the weight
    map lands on the line where the two one-sided reconstructions coincide;
    both states are then set to the mean of the two (equal up to round-off),
    so the zero jump is exact in floating point and mirror symmetry is
    preserved bitwise.
    """
    vm1, v0, v1, v2 = (np.asarray(v, dtype=float) for v in (vm1, v0, v1, v2))
    d_mid = v1 - v0
    central = 0.5 * (v0 + v1)
    zero = d_mid == 0.0
    safe = np.where(zero, 1.0, d_mid)
    theta_p = (v0 - vm1) / safe
    theta_m = (v2 - v1) / safe

    c1, c2 = spweno_coefficients(theta_p, theta_m)
    w0, w1, wt0, wt1 = spweno_weights(c1, c2)
    v_minus = w0 * central + w1 * (1.5 * v0 - 0.5 * vm1)
    v_plus = wt0 * (1.5 * v1 - 0.5 * v2) + wt1 * central

    coincide = ((theta_p < 1.0) & (theta_m > 1.0)) | ((theta_p > 1.0) & (theta_m < 1.0))
    merged = 0.5 * (v_minus + v_plus)
    v_minus = np.where(zero, central, np.where(coincide, merged, v_minus))
    v_plus = np.where(zero, central, np.where(coincide, merged, v_plus))
    return InterfaceTrace(v_minus, v_plus, v_plus - v_minus)


def spweno_jump_region(theta_plus, theta_minus_next):
    """Classify defined-ratio inputs into the jump regions OMEGA0..OMEGA3."""
    tp = np.asarray(theta_plus, dtype=float)
    tm = np.asarray(theta_minus_next, dtype=float)
    omega1 = ((np.abs(tp) <= 1.0) & (tm == 1.0)) | (
        (-1.0 <= tp) & (tp < 1.0) & (tm < -1.0)
    )
    omega2 = ((tp == 1.0) & (np.abs(tm) <= 1.0)) | (
        (tp < -1.0) & (-1.0 <= tm) & (tm < 1.0)
    )
    omega3 = (-1.0 <= tp) & (tp < 1.0) & (-1.0 <= tm) & (tm < 1.0)
    region = np.select([omega1, omega2, omega3], [1, 2, 3], default=0)
    if region.ndim == 0:
        return JumpRegion(int(region))
    return region


def region_jump(region, d_left, d_mid, d_right):
    """Reconstructed jump implied by the region classification."""
    region = np.asarray(region)
    d_left, d_mid, d_right = (
        np.asarray(d, dtype=float) for d in (d_left, d_mid, d_right)
    )
    return np.select(
        [region == JumpRegion.OMEGA0, region == JumpRegion.OMEGA1,
         region == JumpRegion.OMEGA2],
        [np.zeros_like(d_mid), 0.5 * (d_mid - d_left), 0.5 * (d_mid - d_right)],
        default=d_mid - 0.5 * (d_left + d_right),
    )


def eno2_trace(vm1, v0, v1, v2) -> InterfaceTrace:
    """Second-order ENO trace: per side, the linear stencil with the smaller
    jump magnitude; ties take the stencil straddling the interface."""
    vm1, v0, v1, v2 = (np.asarray(v, dtype=float) for v in (vm1, v0, v1, v2))
    d_left = v0 - vm1
    d_mid = v1 - v0
    d_right = v2 - v1
    central = 0.5 * (v0 + v1)
    v_minus = np.where(np.abs(d_left) < np.abs(d_mid), 1.5 * v0 - 0.5 * vm1, central)
    v_plus = np.where(np.abs(d_right) < np.abs(d_mid), 1.5 * v1 - 0.5 * v2, central)
    return InterfaceTrace(v_minus, v_plus, v_plus - v_minus)


def _eno3_minus(vm2, vm1, v0, v1, v2):
    """ENO-3 value at the right edge of the cell holding v0.

    Hierarchical selection by divided differences: extend the stencil left
    when the left difference is strictly smaller in magnitude, else right.
    Uniform spacing lets plain differences stand in for divided ones.
    """
    left1 = np.abs(v0 - vm1) < np.abs(v1 - v0)
    dd_ll = vm2 - 2.0 * vm1 + v0
    dd_lc = vm1 - 2.0 * v0 + v1
    dd_cr = v0 - 2.0 * v1 + v2
    left2 = np.where(left1, np.abs(dd_ll) < np.abs(dd_lc), np.abs(dd_lc) < np.abs(dd_cr))
    shift = left1.astype(int) + left2.astype(int)
    val0 = 0.375 * v0 + 0.75 * v1 - 0.125 * v2
    val1 = -0.125 * vm1 + 0.75 * v0 + 0.375 * v1
    val2 = 0.375 * vm2 - 1.25 * vm1 + 1.875 * v0
    return np.where(shift == 2, val2, np.where(shift == 1, val1, val0))


def _eno3_plus(vm1, v0, v1, v2, v3):
    """ENO-3 value at the left edge of the cell holding v1.

    Same global left/right hierarchy as the minus side (ties extend right);
    a reflected tie-break would lose the sign property on tie data. When
    both sides settle on the same three cells the value expressions match
    the minus side term for term, so the jump vanishes bitwise.
    """
    left1 = np.abs(v1 - v0) < np.abs(v2 - v1)
    dd_lc = vm1 - 2.0 * v0 + v1
    dd_cc = v0 - 2.0 * v1 + v2
    dd_cr = v1 - 2.0 * v2 + v3
    left2 = np.where(left1, np.abs(dd_lc) < np.abs(dd_cc), np.abs(dd_cc) < np.abs(dd_cr))
    shift = left1.astype(int) + left2.astype(int)
    val0 = 1.875 * v1 - 1.25 * v2 + 0.375 * v3
    val1 = 0.375 * v0 + 0.75 * v1 - 0.125 * v2
    val2 = -0.125 * vm1 + 0.75 * v0 + 0.375 * v1
    return np.where(shift == 2, val2, np.where(shift == 1, val1, val0))


def eno3_trace(vm2, vm1, v0, v1, v2, v3) -> InterfaceTrace:
    """Third-order ENO trace at the interface between v0 and v1."""
    vm2, vm1, v0, v1, v2, v3 = (
        np.asarray(v, dtype=float) for v in (vm2, vm1, v0, v1, v2, v3)
    )
    v_minus = _eno3_minus(vm2, vm1, v0, v1, v2)
    v_plus = _eno3_plus(vm1, v0, v1, v2, v3)
    return InterfaceTrace(v_minus, v_plus, v_plus - v_minus)


def weno3_js_weights(vm1, v0, v1, v2):
    """Nonlinear Jiang-Shu weights (w0, w1, wt0, wt1); the stencil straddling
    the interface carries the ideal weight 2/3 on either side."""
    vm1, v0, v1, v2 = (np.asarray(v, dtype=float) for v in (vm1, v0, v1, v2))
    d_ideal, s_ideal = WENO_IDEAL

    def pair(beta_straddle, beta_sided):
        a0 = d_ideal / (WENO_EPS + beta_straddle) ** 2
        a1 = s_ideal / (WENO_EPS + beta_sided) ** 2
        total = a0 + a1
        return a0 / total, a1 / total

    beta_mid = (v1 - v0) ** 2
    w0, w1 = pair(beta_mid, (v0 - vm1) ** 2)
    wt1, wt0 = pair(beta_mid, (v2 - v1) ** 2)
    return w0, w1, wt0, wt1


def weno3_js_trace(vm1, v0, v1, v2) -> InterfaceTrace:
    """Classical WENO-3 comparator. Smooth weights, no sign property."""
    vm1, v0, v1, v2 = (np.asarray(v, dtype=float) for v in (vm1, v0, v1, v2))
    w0, w1, wt0, wt1 = weno3_js_weights(vm1, v0, v1, v2)
    central = 0.5 * (v0 + v1)
    v_minus = w0 * central + w1 * (1.5 * v0 - 0.5 * vm1)
    v_plus = wt0 * (1.5 * v1 - 0.5 * v2) + wt1 * central
    return InterfaceTrace(v_minus, v_plus, v_plus - v_minus)


def trace_stencil(scheme: Scheme, vm2, vm1, v0, v1, v2, v3) -> InterfaceTrace:
    """Trace one interface from its six-cell window; four-point schemes
    ignore the outermost cells."""
    if scheme is Scheme.SPWENO:
        return spweno_trace(vm1, v0, v1, v2)
    if scheme is Scheme.ENO2:
        return eno2_trace(vm1, v0, v1, v2)
    if scheme is Scheme.ENO3:
        return eno3_trace(vm2, vm1, v0, v1, v2, v3)
    if scheme is Scheme.WENO3:
        return weno3_js_trace(vm1, v0, v1, v2)
    raise ValueError(f"unknown scheme {scheme!r}")


def reconstruct_field(field: CellField, scheme: Scheme,
                      bc: BoundaryCondition) -> InterfaceTrace:
    """Trace every interface 0..n_cells of a field.

    Padding is rebuilt here from the interior at the width the scheme needs
    (ENO-3 reaches one cell beyond the standard two ghosts at the outermost
    interfaces), so the field's own ghost slots need not be filled.
    """
    n = field.grid.n_cells
    w = stencil_width(scheme)
    p = pad(field.interior, bc, w)
    m = n + 1
    vm1, v0, v1, v2 = (p[w - 2 + j:w - 2 + j + m] for j in range(4))
    if scheme is Scheme.ENO3:
        vm2 = p[w - 3:w - 3 + m]
        v3 = p[w + 2:w + 2 + m]
        return eno3_trace(vm2, vm1, v0, v1, v2, v3)
    if scheme is Scheme.SPWENO:
        return spweno_trace(vm1, v0, v1, v2)
    if scheme is Scheme.ENO2:
        return eno2_trace(vm1, v0, v1, v2)
    if scheme is Scheme.WENO3:
        return weno3_js_trace(vm1, v0, v1, v2)
    raise ValueError(f"unknown scheme {scheme!r}")
