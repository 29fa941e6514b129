"""Uniform 1-D grid with ghost-cell padding and boundary-condition fills.

Cells are the intervals [x_{k}, x_{k+1}) of width h, with interfaces at
x_k = a + k*h for k = 0..n_cells and cell centers halfway between. Two ghost
cells per side are enough for the widest per-interface stencil used by the
fourth-order flux and the WENO reconstructions (cells i-1..i+2).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

N_GHOST = 2

MIN_CELLS = 5


class BoundaryCondition(Enum):
    PERIODIC = "periodic"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class Grid:
    """Uniform mesh over [a, b] with n_cells cells of width h."""

    a: float
    b: float
    n_cells: int
    h: float
    n_ghost: int = N_GHOST

    def cell_center(self, i: int) -> float:
        """Center of interior cell i (0-based)."""
        return self.a + (i + 0.5) * self.h

    @property
    def centers(self) -> np.ndarray:
        return self.a + (np.arange(self.n_cells) + 0.5) * self.h

    @property
    def interfaces(self) -> np.ndarray:
        """Interface coordinates a + k*h for k = 0..n_cells."""
        return self.a + np.arange(self.n_cells + 1) * self.h


def build_grid(a: float, b: float, n_cells: int) -> Grid:
    """Create a uniform grid; rejects domains of zero width and meshes too
    coarse to hold a full reconstruction stencil."""
    if not b > a:
        raise ValueError(f"domain must satisfy b > a, got [{a}, {b}]")
    n_cells = int(n_cells)
    if n_cells < MIN_CELLS:
        raise ValueError(f"need at least {MIN_CELLS} cells, got {n_cells}")
    return Grid(a=float(a), b=float(b), n_cells=n_cells, h=(b - a) / n_cells)


def pad(interior: np.ndarray, bc: BoundaryCondition, width: int) -> np.ndarray:
    """Extend interior cell values by `width` ghost cells on each side.

    Periodic copies from the opposite end; Neumann repeats the nearest
    interior value (zero-gradient extension).
    """
    u = np.asarray(interior, dtype=float)
    if width > u.size:
        raise ValueError("ghost width exceeds the number of interior cells")
    if bc is BoundaryCondition.PERIODIC:
        return np.concatenate([u[u.size - width:], u, u[:width]])
    if bc is BoundaryCondition.NEUMANN:
        return np.concatenate([np.full(width, u[0]), u, np.full(width, u[-1])])
    raise ValueError(f"unknown boundary condition {bc!r}")


@dataclass
class CellField:
    """Cell-centered samples on a padded grid.

    `values` has length n_cells + 2*n_ghost; the interior slice holds u_i at
    the cell centers, the outer slots are ghost values.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        expected = self.grid.n_cells + 2 * self.grid.n_ghost
        if self.values.shape != (expected,):
            raise ValueError(
                f"values must have shape ({expected},), got {self.values.shape}"
            )

    @classmethod
    def from_interior(cls, grid: Grid, interior: np.ndarray) -> "CellField":
        values = np.zeros(grid.n_cells + 2 * grid.n_ghost)
        values[grid.n_ghost:grid.n_ghost + grid.n_cells] = interior
        return cls(grid, values)

    @classmethod
    def sample(cls, grid: Grid, fn) -> "CellField":
        """Sample fn at the cell centers (ghosts left unset)."""
        return cls.from_interior(grid, fn(grid.centers))

    @property
    def interior(self) -> np.ndarray:
        g = self.grid
        return self.values[g.n_ghost:g.n_ghost + g.n_cells]


def fill_ghosts(field: CellField, bc: BoundaryCondition) -> CellField:
    """Return a field whose ghost slots are filled from the interior."""
    return CellField(field.grid, pad(field.interior, bc, field.grid.n_ghost))
