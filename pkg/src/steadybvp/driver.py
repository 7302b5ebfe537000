"""Dispatch a problem description to the matching solver and bundle the outcome."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import diagnostics
from .fixedpoint import BaseFlow, CaseData, iterate
from .gradshafranov import Diffeomorphism, solve_case_A, solve_case_D
from .grid import BoundaryTrace, ScalarField, StripGrid, VectorField, bernoulli, curl2d
from .pressure import recover_pressure, solve_case_C_full
from .problem import BvpSpec
from .report import SolveReport


@dataclass(frozen=True)
class Solution:
    """Converged fields plus the solver report for one problem."""

    spec: BvpSpec
    v: VectorField
    p: ScalarField
    omega: ScalarField
    H: ScalarField
    report: SolveReport
    base: BaseFlow | None = None
    f_plus_solved: BoundaryTrace | None = None


def make_base_flow(spec: BvpSpec) -> BaseFlow:
    if spec.base_kind == "uniform":
        return BaseFlow.uniform(spec.grid, spec.base_strength)
    return BaseFlow.harmonic(spec.grid, spec.base_epsilon)


def _ones(grid: StripGrid, side: str) -> BoundaryTrace:
    return BoundaryTrace(np.ones(grid.nx), side)


def _zeros(grid: StripGrid, side: str) -> BoundaryTrace:
    return BoundaryTrace.zeros(grid, side)


def solve_bvp(spec: BvpSpec) -> Solution:
    """Solve the problem described by ``spec`` and verify it with diagnostics.

    Cases A and D go through the elliptic stream-function route; B, C, C-full
    and G through the vorticity-transport fixed point with pressure recovery.
    """
    grid = spec.grid
    case = spec.case

    if case == "A":
        f_minus = spec.f_minus or _ones(grid, "bottom")
        f_plus = spec.f_plus or _ones(grid, "top")
        h_minus = spec.h_minus or _zeros(grid, "bottom")
        flux = 0.0 if spec.flux is None else spec.flux
        v, p, report = solve_case_A(
            f_minus, f_plus, h_minus, flux, grid, tol=spec.tol, max_iter=spec.max_iter
        )
        return _bundle(spec, v, p, report, base=None, f_plus_solved=None)

    if case == "D":
        f_minus = spec.f_minus or _ones(grid, "bottom")
        h_minus = spec.h_minus or _zeros(grid, "bottom")
        h_plus = spec.h_plus or _zeros(grid, "top")
        T = spec.circle_map or Diffeomorphism.identity(grid)
        v, p, report = solve_case_D(
            f_minus, h_minus, h_plus, T, grid, tol=spec.tol, max_iter=spec.max_iter
        )
        return _bundle(spec, v, p, report, base=None, f_plus_solved=None)

    base = make_base_flow(spec)
    flux = base.J0 if spec.flux is None else spec.flux
    f_minus = spec.f_minus or _zeros(grid, "bottom")
    h_minus = spec.h_minus or _zeros(grid, "bottom")
    h_plus = spec.h_plus or _zeros(grid, "top")

    if case == "C-full":
        v, p, report = solve_case_C_full(
            h_minus, h_plus, f_minus, flux, base, grid, tol=spec.tol, max_iter=spec.max_iter
        )
        return _bundle(spec, v, p, report, base=base, f_plus_solved=None)

    data = CaseData(
        case,
        grid,
        f_minus,
        flux=flux,
        f_plus=spec.f_plus,
        h_minus=h_minus,
        h_plus=h_plus,
    )
    V, f_plus_solved, report = iterate(data, base, tol=spec.tol, max_iter=spec.max_iter)
    v = base.v0 + V

    if case == "G":
        # Bernoulli datum pins H at the bottom-left corner; solve for p there
        H0_corner = float(bernoulli(base.v0, base.p0).values[0, 0])
        speed2 = float(v.comp1.values[0, 0] ** 2 + v.comp2.values[0, 0] ** 2)
        anchor = H0_corner + float(h_minus.values[0]) - 0.5 * speed2
    else:
        anchor = float(h_minus.values[0]) + float(base.p0.values[0, 0])
    p = recover_pressure(v, anchor)
    return _bundle(spec, v, p, report, base=base, f_plus_solved=f_plus_solved)


def _bundle(
    spec: BvpSpec,
    v: VectorField,
    p: ScalarField,
    report: SolveReport,
    base: BaseFlow | None,
    f_plus_solved: BoundaryTrace | None,
) -> Solution:
    omega = curl2d(v)
    H = bernoulli(v, p)
    report.residuals.update(diagnostics.euler_residual(v, p))
    for name, value in diagnostics.boundary_check(v, p, _CheckView(spec, base), base).items():
        report.residuals[f"boundary_{name}"] = value
    return Solution(spec, v, p, omega, H, report, base=base, f_plus_solved=f_plus_solved)


class _CheckView:
    """Adapter presenting a BvpSpec to boundary_check with defaults resolved."""

    def __init__(self, spec: BvpSpec, base: BaseFlow | None):
        grid = spec.grid
        self.case = spec.case
        if spec.case in ("A", "D"):
            self.f_minus = spec.f_minus or _ones(grid, "bottom")
            self.f_plus = spec.f_plus or (_ones(grid, "top") if spec.case == "A" else None)
            self.flux = spec.flux if spec.case == "A" else None
            if spec.flux is None and spec.case == "A":
                self.flux = 0.0
        else:
            self.f_minus = spec.f_minus or _zeros(grid, "bottom")
            self.f_plus = spec.f_plus
            self.flux = spec.flux
            if self.flux is None and base is not None:
                self.flux = base.J0
        self.h_minus = spec.h_minus
        self.h_plus = spec.h_plus
