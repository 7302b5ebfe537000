"""Div-curl reconstruction: divergence-free field from curl, wall traces and flux.

The solution is W = (0, A) + perp_gradient(psi) with A the mean inflow and psi
a Poisson solve whose wall traces are the running integrals of the mean-free
normal data; the flux constraint enters as a constant offset of the top trace.
The trace integrals are spectral, exact for trigonometric data, which keeps
psi single valued to machine precision.
"""

from __future__ import annotations

from .errors import MassImbalance
from .grid import (
    BoundaryTrace,
    ScalarField,
    VectorField,
    antiderivative_samples,
    ddy,
    ddx,
)
from .poisson import solve_poisson_dirichlet


def solve_div_curl(
    omega: ScalarField,
    f_bottom: BoundaryTrace,
    f_top: BoundaryTrace,
    j: float,
    tol: float | None = None,
) -> VectorField:
    """Unique W with curl W = omega, div W = 0, W.n = f on the walls, flux j.

    Requires the mass balance mean(f_top) = mean(f_bottom) within ``tol``
    (default 1e-10 * (1 + |mean f|)).  The wall traces of W^2 reproduce the
    data exactly at the grid level; curl, divergence and flux hold to the
    scheme's truncation error.
    """
    grid = omega.grid
    if f_bottom.nx != grid.nx or f_top.nx != grid.nx:
        raise ValueError("wall traces must match the grid nx")
    A = f_bottom.mean()
    A_top = f_top.mean()
    if tol is None:
        tol = 1e-10 * (1.0 + abs(A))
    if abs(A_top - A) >= tol:
        raise MassImbalance(
            f"mean(f_top) - mean(f_bottom) = {A_top - A:.3e} exceeds tolerance {tol:.3e}"
        )

    psi_bottom = BoundaryTrace(antiderivative_samples(f_bottom.values), "bottom")
    psi_top = BoundaryTrace(-j + antiderivative_samples(f_top.values), "top")
    psi = solve_poisson_dirichlet(omega, psi_bottom, psi_top)
    return VectorField.from_arrays(grid, -ddy(psi).values, A + ddx(psi).values)
