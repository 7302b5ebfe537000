"""Magnetohydrostatic facade: exact change of variables onto the flow solvers.

The magnetohydrostatic system (force balance B x j = -grad p, curl B = j,
div B = 0) maps onto steady flow under B <-> v, j <-> omega, p <-> -(p + |v|^2/2).
Every boundary-value case therefore reduces to its flow counterpart with the
pressure-like wall data negated; no numerics are duplicated here.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .diagnostics import INTERIOR_MARGIN
from .driver import Solution, solve_bvp
from .grid import ScalarField, VectorField, bernoulli, curl2d, ddx, ddy
from .problem import BvpSpec
from .report import SolveReport


@dataclass(frozen=True)
class MhsState:
    """Magnetic field, current density and magnetohydrostatic pressure."""

    B: VectorField
    j: ScalarField
    p: ScalarField


def euler_to_mhs(v: VectorField, p: ScalarField) -> MhsState:
    """B = v, j = curl v, p_mhs = -(p + |v|^2 / 2)."""
    return MhsState(B=v, j=curl2d(v), p=-bernoulli(v, p))


def mhs_to_euler(state: MhsState) -> tuple[VectorField, ScalarField]:
    """Invert the transformation: v = B, p = -p_mhs - |B|^2 / 2."""
    B = state.B
    speed2 = B.comp1.values**2 + B.comp2.values**2
    return B, ScalarField(B.grid, -state.p.values - 0.5 * speed2)


def mhs_residual(state: MhsState) -> dict[str, float]:
    """Sup norms of the force-balance defect B x j + grad p over the interior.

    ``force_balance_sup`` discretizes grad(|B|^2/2) in product-rule form, which
    makes the defect algebraically identical to the flow momentum defect of the
    transformed state; ``force_balance_direct_sup`` differentiates the stored
    pressure field directly and agrees up to the discrete product rule, O(h^2).
    """
    B, j = state.B, state.j.values
    b1, b2 = B.comp1.values, B.comp2.values
    _, p_e = mhs_to_euler(state)

    r1 = b2 * j - ddx(p_e).values - b1 * ddx(B.comp1).values - b2 * ddx(B.comp2).values
    r2 = -b1 * j - ddy(p_e).values - b1 * ddy(B.comp1).values - b2 * ddy(B.comp2).values
    r1d = b2 * j + ddx(state.p).values
    r2d = -b1 * j + ddy(state.p).values

    m = INTERIOR_MARGIN
    inner = np.s_[m:-m, :]
    return {
        "force_balance_sup": float(np.max(np.hypot(r1[inner], r2[inner]))),
        "force_balance_direct_sup": float(np.max(np.hypot(r1d[inner], r2d[inner]))),
    }


def solve_mhs(spec: BvpSpec) -> tuple[MhsState, SolveReport]:
    """Solve a magnetohydrostatic case by translating it to the flow problem.

    All pressure-like wall data change sign under the variable map (p <-> -H
    turns each magnetohydrostatic wall condition into the flow condition of the
    same case row); normal traces, flux and the circle map carry over as is.
    """
    flipped = replace(
        spec,
        h_minus=None if spec.h_minus is None else -1.0 * spec.h_minus,
        h_plus=None if spec.h_plus is None else -1.0 * spec.h_plus,
    )
    solution = solve_bvp(flipped)
    state = euler_to_mhs(solution.v, solution.p)
    report = solution.report
    report.residuals.update(mhs_residual(state))
    return state, report


def solution_to_state(solution: Solution) -> MhsState:
    return euler_to_mhs(solution.v, solution.p)
