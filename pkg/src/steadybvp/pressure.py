"""Pressure recovery and the top-wall compatibility operator for case C.

The pressure solves grad p = -(v.grad)v once the velocity is known; it is
recovered by a spectral antiderivative along one horizontal row and trapezoid
integration along the vertical lines, anchored at the bottom-left corner.
The horizontal leg runs along the first row clear of the walls rather than the
wall itself: the wall rows of (v.grad)v involve compositions of one-sided
stencils that are only first-order accurate there, and an error in the
horizontal leg shifts every row.  Uni-valuedness requires zero mean of the
first momentum component along that row, and path independence requires the
integrand to be curl-free; both are guarded.

Full Dirichlet pressure data on both walls is solvable only when the datum's
value at (0, L) matches the constant the solver produces; that constant is the
compatibility value computed here.
"""

from __future__ import annotations

import numpy as np

from .diagnostics import INTERIOR_MARGIN, advective_acceleration
from .errors import CompatibilityViolated, MultiValuedPressure, PathDependence
from .fixedpoint import BaseFlow, CaseData, iterate
from .grid import (
    BoundaryTrace,
    ScalarField,
    StripGrid,
    VectorField,
    antiderivative_samples,
    ddx,
    ddy,
)
from .report import SolveReport


def recover_pressure(
    v: VectorField,
    anchor: float,
    univalued_tol: float | None = None,
    path_tol: float | None = None,
) -> ScalarField:
    """Pressure with grad p = -(v.grad)v and p(0, 0) = anchor.

    Integrates -(v.grad)v^1 spectrally along the lowest wall-clear row, then
    -(v.grad)v^2 by cumulative trapezoid along each vertical line, and shifts
    so the bottom-left corner carries the anchor.  Raises MultiValuedPressure
    when the circulation of the integrand along the horizontal leg is not
    negligible and PathDependence when the integrand is visibly not curl-free.
    """
    a = advective_acceleration(v)
    a1, a2 = a.comp1.values, a.comp2.values
    sup_a = max(np.max(np.abs(a1)), np.max(np.abs(a2)))
    g = v.grid
    if univalued_tol is None:
        # 1e-8 floor plus the O(h^2) circulation the stencils themselves leave
        univalued_tol = (1e-8 + g.dy**2) * (1.0 + sup_a)
    if path_tol is None:
        path_tol = 0.1 * (1.0 + sup_a)
    ref = min(INTERIOR_MARGIN, g.ny - 1 - INTERIOR_MARGIN)
    ref = max(ref, 0)

    circulation = abs(float(np.mean(a1[ref, :])))
    if circulation > univalued_tol:
        raise MultiValuedPressure(
            f"circulation of (v.grad)v^1 along the horizontal leg is {circulation:.3e} "
            f"(tolerance {univalued_tol:.3e}); pressure would be multivalued"
        )
    curl_a = ddx(a.comp2).values - ddy(a.comp1).values
    m = INTERIOR_MARGIN
    curl_sup = float(np.max(np.abs(curl_a[m:-m, :]))) if g.ny > 2 * m else 0.0
    if curl_sup > path_tol:
        raise PathDependence(
            f"curl of (v.grad)v has sup {curl_sup:.3e} (tolerance {path_tol:.3e}); "
            "line integrals of the pressure gradient are path dependent"
        )

    h = g.dy
    increments = -0.5 * h * (a2[1:, :] + a2[:-1, :])
    vertical = np.zeros((g.ny, g.nx))
    vertical[1:, :] = np.cumsum(increments, axis=0)
    p = antiderivative_samples(-a1[ref, :])[None, :] + (vertical - vertical[ref, :][None, :])
    return ScalarField(g, p + (anchor - p[0, 0]))


def _solve_case_C(
    h_minus: BoundaryTrace,
    h_plus: BoundaryTrace,
    f_minus: BoundaryTrace,
    J: float,
    base: BaseFlow,
    grid: StripGrid,
    tol: float,
    max_iter: int,
) -> tuple[VectorField, ScalarField, SolveReport, float]:
    data = CaseData("C", grid, f_minus, flux=J, h_minus=h_minus, h_plus=h_plus)
    V, f_plus, report = iterate(data, base, tol=tol, max_iter=max_iter)
    v = base.v0 + V
    anchor = float(h_minus.values[0]) + float(base.p0.values[0, 0])
    p = recover_pressure(v, anchor)
    lam = float(p.values[-1, 0]) - float(base.p0.values[-1, 0])
    report.residuals["top_trace_sup"] = float(np.max(np.abs(f_plus.values)))
    return v, p, report, lam


def compatibility_lambda(
    h_minus: BoundaryTrace,
    h_plus: BoundaryTrace,
    f_minus: BoundaryTrace,
    J: float,
    base: BaseFlow,
    grid: StripGrid,
    tol: float = 1e-10,
    max_iter: int = 60,
) -> float:
    """Top-left pressure offset p(0, L) - p0(0, L) forced by the case-C data.

    Invariant under constant shifts of h_plus, since only its x-derivative
    enters the solve.
    """
    _, _, _, lam = _solve_case_C(h_minus, h_plus, f_minus, J, base, grid, tol, max_iter)
    return lam


def solve_case_C_full(
    h_minus: BoundaryTrace,
    h_plus: BoundaryTrace,
    f_minus: BoundaryTrace,
    J: float,
    base: BaseFlow,
    grid: StripGrid,
    tol: float = 1e-10,
    max_iter: int = 60,
    compat_tol: float = 1e-6,
) -> tuple[VectorField, ScalarField, SolveReport]:
    """Case C with pointwise pressure data on both walls.

    Solvable iff h_plus(0) equals the compatibility value; otherwise raises
    CompatibilityViolated carrying that value so callers can correct the datum.
    """
    v, p, report, lam = _solve_case_C(h_minus, h_plus, f_minus, J, base, grid, tol, max_iter)
    defect = abs(float(h_plus.values[0]) - lam)
    if defect > compat_tol:
        raise CompatibilityViolated(
            f"h_plus(0) = {h_plus.values[0]:.6e} but the data force {lam:.6e} "
            f"(defect {defect:.3e})",
            lambda_value=lam,
        )
    report.residuals["compatibility_defect"] = defect
    return v, p, report
