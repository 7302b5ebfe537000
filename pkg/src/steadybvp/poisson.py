"""Dirichlet Poisson and semilinear solves on the strip.

The scheme is spectral in x and a three-point second difference in y: after an
x-FFT of every row, each Fourier mode satisfies an independent tridiagonal
boundary-value problem in y, solved directly (Thomas algorithm, vectorized
across modes).  The zero mode is handled identically; Dirichlet data at both
walls keeps it well posed.
"""

from __future__ import annotations

import numpy as np

from .errors import NoConvergence
from .grid import BoundaryTrace, ScalarField, StripGrid
from .profiles import ProfileFunction
from .report import SolveReport


def _check_trace(trace: BoundaryTrace, grid: StripGrid, name: str) -> np.ndarray:
    if trace.nx != grid.nx:
        raise ValueError(f"{name} trace has {trace.nx} samples, grid expects {grid.nx}")
    return trace.values


def solve_poisson_dirichlet(rhs: ScalarField, bottom: BoundaryTrace, top: BoundaryTrace) -> ScalarField:
    """Solve lap(psi) = rhs with psi(.,0) = bottom and psi(.,L) = top.

    Returns the grid function whose interior rows satisfy the discrete scheme
    exactly (direct solve) and whose wall rows equal the traces.
    """
    grid = rhs.grid
    b = _check_trace(bottom, grid, "bottom")
    t = _check_trace(top, grid, "top")

    h = grid.dy
    F = np.fft.rfft(rhs.values, axis=1)
    B = np.fft.rfft(b)
    T = np.fft.rfft(t)

    nk = F.shape[1]
    lam = (2.0 * np.pi * np.arange(nk)) ** 2
    diag = -2.0 / h**2 - lam          # per-mode constant diagonal
    off = 1.0 / h**2

    n = grid.ny - 2
    rhs_modes = F[1:-1, :].copy()
    rhs_modes[0, :] -= off * B
    rhs_modes[-1, :] -= off * T

    # Thomas algorithm across all modes at once; the matrix is strictly
    # diagonally dominant, so no pivoting is needed.
    cp = np.empty((n, nk))
    dp = np.empty((n, nk), dtype=complex)
    beta = diag.copy()
    cp[0, :] = off / beta
    dp[0, :] = rhs_modes[0, :] / beta
    for j in range(1, n):
        beta = diag - off * cp[j - 1, :]
        cp[j, :] = off / beta
        dp[j, :] = (rhs_modes[j, :] - off * dp[j - 1, :]) / beta
    U = np.empty((n, nk), dtype=complex)
    U[-1, :] = dp[-1, :]
    for j in range(n - 2, -1, -1):
        U[j, :] = dp[j, :] - cp[j, :] * U[j + 1, :]

    modes = np.empty((grid.ny, nk), dtype=complex)
    modes[0, :] = B
    modes[-1, :] = T
    modes[1:-1, :] = U
    values = np.fft.irfft(modes, n=grid.nx, axis=1)
    # wall rows carry the Dirichlet data exactly, not through an FFT round trip
    values[0, :] = b
    values[-1, :] = t
    return ScalarField(grid, values)


def apply_discrete_laplacian(field: ScalarField) -> ScalarField:
    """Apply the solver's discrete Laplacian; wall rows of the result are zero.

    Matches solve_poisson_dirichlet mode for mode (full spectral multiplier in
    x including Nyquist, three-point stencil in y), so solve + apply round-trips
    to rounding error on the interior.
    """
    grid = field.grid
    coef = np.fft.rfft(field.values, axis=1)
    lam = (2.0 * np.pi * np.arange(coef.shape[1])) ** 2
    dxx = np.fft.irfft(-lam * coef, n=grid.nx, axis=1)
    f = field.values
    out = np.zeros_like(f)
    h = grid.dy
    out[1:-1, :] = dxx[1:-1, :] + (f[2:, :] - 2 * f[1:-1, :] + f[:-2, :]) / h**2
    return ScalarField(grid, out)


def solve_semilinear(
    Fprime: ProfileFunction,
    J: float,
    bottom: BoundaryTrace,
    top: BoundaryTrace,
    init: ScalarField,
    tol: float = 1e-10,
    max_iter: int = 100,
) -> tuple[ScalarField, SolveReport]:
    """Picard iteration for lap(phi) = F'(J x + phi) with Dirichlet traces.

    Successive substitution phi <- poisson_solve(F'(J x + phi)); stops when the
    sup-norm update drops below ``tol``.  Raises NoConvergence at ``max_iter``,
    which for bounded F' signals data outside the contractive small-data regime.
    """
    grid = init.grid
    X, _ = grid.meshes()
    phi = init
    ratios: list[float] = []
    prev_update = None
    for iteration in range(1, max_iter + 1):
        rhs = ScalarField(grid, Fprime.eval_prime(J * X + phi.values))
        phi_new = solve_poisson_dirichlet(rhs, bottom, top)
        update = float(np.max(np.abs(phi_new.values - phi.values)))
        if prev_update is not None and prev_update > 0.0:
            ratios.append(update / prev_update)
        prev_update = update
        phi = phi_new
        if update < tol:
            return phi, SolveReport(
                iterations=iteration,
                final_update=update,
                contraction_ratio=ratios[-1] if ratios else 0.0,
                converged=True,
            )
    raise NoConvergence(
        f"semilinear Picard iteration did not reach tol={tol:g} in {max_iter} steps "
        f"(last update {prev_update:.3e}, last ratio "
        f"{ratios[-1] if ratios else float('nan'):.3f})",
        iterations=max_iter,
        final_update=prev_update,
    )
