"""Vorticity-transport fixed point for cases B, C and G.

One application of the operator: assemble the inflow vorticity from the bottom
boundary data via the Bernoulli identity omega = dH/dx / v2, transport it along
the characteristics of the current velocity, and rebuild a divergence-free
update from the div-curl problem.  For cases C and G the top normal trace is
itself an unknown, updated from the transported vorticity through the same
identity on the top wall.  Successive substitution from zero converges inside
the small-data regime; growth of the updates or leaving the perturbation ball
is reported as non-convergence.

Case D (Bernoulli data on both walls) is not offered here: its top-trace
update would divide the wall derivative of the datum by the transported
vorticity, losing one derivative per pass, so the loop cannot close; that case
belongs to the elliptic route in :mod:`gradshafranov`.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median

import numpy as np

from .divcurl import solve_div_curl
from .errors import NoConvergence, TangencyDetected
from .grid import (
    BoundaryTrace,
    ScalarField,
    StripGrid,
    VectorField,
    antiderivative_samples,
    bernoulli,
    ddx,
    ddx_samples,
    ddy,
)
from .report import SolveReport
from .transport import solve_transport

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class BaseFlow:
    """Irrotational background solution (v0, p0) with its flux and tangency margin.

    ``J0`` is the flux of v0 through {x = 0} and ``vbar2`` the infimum of |v0^2|
    over the grid; the fixed point lives in the ball where the perturbed flow
    keeps |v^2| above vbar2 / 2.
    """

    v0: VectorField
    p0: ScalarField
    J0: float
    vbar2: float

    @classmethod
    def uniform(cls, grid: StripGrid, strength: float = 1.0) -> "BaseFlow":
        if strength <= 0.0:
            raise ValueError(f"uniform base flow needs positive strength, got {strength}")
        v0 = VectorField.from_arrays(
            grid, np.zeros((grid.ny, grid.nx)), np.full((grid.ny, grid.nx), strength)
        )
        return cls(v0, ScalarField.zeros(grid), 0.0, strength)

    @classmethod
    def harmonic(cls, grid: StripGrid, epsilon: float) -> "BaseFlow":
        """Gradient of y + eps e^{-2 pi y} sin(2 pi x) / (2 pi), with Bernoulli pressure.

        Curl-free and divergence-free for every eps; inf |v0^2| = 1 - eps > 0
        requires eps < 1.
        """
        if not 0.0 <= epsilon < 1.0:
            raise ValueError(f"harmonic base flow needs 0 <= eps < 1, got {epsilon}")
        X, Y = grid.meshes()
        decay = np.exp(-TWO_PI * Y)
        v1 = epsilon * decay * np.cos(TWO_PI * X)
        v2 = 1.0 - epsilon * decay * np.sin(TWO_PI * X)
        v0 = VectorField.from_arrays(grid, v1, v2)
        p0 = ScalarField(grid, 0.5 - 0.5 * (v1**2 + v2**2))
        J0 = epsilon * (1.0 - np.exp(-TWO_PI * grid.L)) / TWO_PI
        vbar2 = float(np.min(np.abs(v2)))
        return cls(v0, p0, J0, vbar2)

    @property
    def vmin(self) -> float:
        """Tangency guard used throughout the iteration."""
        return 0.5 * self.vbar2

    def dy_v01_row(self, row: int) -> np.ndarray:
        """d(v0^1)/dy on a wall row, via the curl-free identity d(v0^1)/dy = d(v0^2)/dx."""
        return ddx(self.v0.comp2).values[row]


@dataclass(frozen=True)
class CaseData:
    """Boundary data for one fixed-point case.

    * case B: normal perturbation ``f_minus``/``f_plus`` on the walls (equal
      means), pressure perturbation ``h_minus`` below.
    * case C: pressure perturbations ``h_minus`` below and ``h_plus`` above
      (only its x-derivative enters), normal perturbation ``f_minus`` below.
    * case G: Bernoulli perturbation ``h_minus`` below, pressure perturbation
      ``h_plus`` above, normal perturbation ``f_minus`` below.

    ``flux`` is the prescribed total flux of v through {x = 0}.
    """

    case: str
    grid: StripGrid
    f_minus: BoundaryTrace
    flux: float
    f_plus: BoundaryTrace | None = None
    h_minus: BoundaryTrace | None = None
    h_plus: BoundaryTrace | None = None

    def __post_init__(self):
        if self.case not in ("B", "C", "G"):
            raise ValueError(f"fixed-point cases are B, C, G; got {self.case!r}")

    def trace(self, name: str) -> np.ndarray:
        t = getattr(self, name)
        return np.zeros(self.grid.nx) if t is None else t.values

    @classmethod
    def zeros(cls, case: str, grid: StripGrid, flux: float = 0.0) -> "CaseData":
        return cls(case, grid, BoundaryTrace.zeros(grid, "bottom"), flux)


def boundary_vorticity(H_trace: BoundaryTrace, v2_trace: BoundaryTrace, vmin: float) -> BoundaryTrace:
    """Inflow vorticity omega0 = d(H)/dx / v2 from the full Bernoulli trace.

    ``H_trace`` is p + |v|^2 / 2 on the bottom wall, assembled by the caller for
    the case at hand; the identity is the first momentum component restricted
    to the wall.
    """
    v2 = v2_trace.values
    low = float(np.min(v2))
    if low < vmin:
        raise TangencyDetected(f"bottom-wall v2 min = {low:.3e} below guard {vmin:.3e}")
    return BoundaryTrace(ddx_samples(H_trace.values) / v2, H_trace.side)


def _bottom_vorticity(V: VectorField, data: CaseData, base: BaseFlow) -> BoundaryTrace:
    f = data.trace("f_minus")
    v2b = base.v0.comp2.values[0] + f
    if data.case == "G":
        # Bernoulli-type bottom datum: H = H0 + h_minus, and H0 is constant
        H_vals = bernoulli(base.v0, base.p0).values[0] + data.trace("h_minus")
    else:
        # pressure-type bottom datum: p = p0 + h_minus
        v1b = base.v0.comp1.values[0] + V.comp1.values[0]
        H_vals = base.p0.values[0] + data.trace("h_minus") + 0.5 * (v1b**2 + v2b**2)
    return boundary_vorticity(
        BoundaryTrace(H_vals, "bottom"), BoundaryTrace(v2b, "bottom"), base.vmin
    )


def _tilde_f_plus(
    omega_top: np.ndarray,
    V: VectorField,
    f_plus: np.ndarray,
    data: CaseData,
    base: BaseFlow,
) -> tuple[BoundaryTrace, float]:
    """Updated top normal trace from the Bernoulli identity on the top wall.

    Solving d(H)/dx = omega v2 on y = L for the trace derivative gives the
    integrand; the additive constant enforces mean(f_plus) = mean(f_minus)
    exactly on every iteration, which is the well-posedness condition of the
    div-curl step.  Returns the trace and the mean of the integrand (zero at
    the fixed point, where the trace closes up periodically).
    """
    v2t = base.v0.comp2.values[-1] + f_plus
    low = float(np.min(v2t))
    if low < base.vmin:
        raise TangencyDetected(f"top-wall v2 min = {low:.3e} below guard {base.vmin:.3e}")
    v01t = base.v0.comp1.values[-1]
    V1t = V.comp1.values[-1]
    hpx = ddx_samples(data.trace("h_plus"))
    numerator = (
        -hpx
        - ddx_samples(v01t * V1t)
        - 0.5 * ddx_samples(V1t**2)
        - f_plus * base.dy_v01_row(-1)
    )
    integrand = omega_top + numerator / v2t
    mean_integrand = float(np.mean(integrand))
    running = antiderivative_samples(integrand)
    values = running + (float(np.mean(data.trace("f_minus"))) - float(np.mean(running)))
    return BoundaryTrace(values, "top"), mean_integrand


def gamma_case_B(V: VectorField, data: CaseData, base: BaseFlow) -> VectorField:
    """One application of the case-B operator: vorticity transport + div-curl."""
    omega0 = _bottom_vorticity(V, data, base)
    omega = solve_transport(base.v0 + V, omega0, base.vmin)
    f_minus = BoundaryTrace(data.trace("f_minus"), "bottom")
    f_plus = BoundaryTrace(
        data.trace("f_plus") if data.f_plus is not None else data.trace("f_minus"), "top"
    )
    return solve_div_curl(omega, f_minus, f_plus, data.flux - base.J0)


def gamma_case_C(
    V: VectorField, f_plus: BoundaryTrace, data: CaseData, base: BaseFlow
) -> tuple[VectorField, BoundaryTrace, float]:
    """One application of the case-C operator; also updates the top normal trace."""
    omega0 = _bottom_vorticity(V, data, base)
    omega = solve_transport(base.v0 + V, omega0, base.vmin)
    tilde, mean_integrand = _tilde_f_plus(omega.values[-1], V, f_plus.values, data, base)
    f_minus = BoundaryTrace(data.trace("f_minus"), "bottom")
    W = solve_div_curl(omega, f_minus, tilde, data.flux - base.J0)
    return W, tilde, mean_integrand


def gamma_case_G(
    V: VectorField, f_plus: BoundaryTrace, data: CaseData, base: BaseFlow
) -> tuple[VectorField, BoundaryTrace, float]:
    """Case G differs from C only in the bottom datum being Bernoulli-type."""
    return gamma_case_C(V, f_plus, data, base)


def _c1_norm(values_list: list[np.ndarray], grid: StripGrid) -> float:
    """Sup norm of the fields and of their first grid derivatives (C1 proxy)."""
    worst = 0.0
    for vals in values_list:
        worst = max(worst, float(np.max(np.abs(vals))))
        if vals.ndim == 2:
            f = ScalarField(grid, vals)
            worst = max(worst, float(np.max(np.abs(ddx(f).values))))
            worst = max(worst, float(np.max(np.abs(ddy(f).values))))
        else:
            worst = max(worst, float(np.max(np.abs(ddx_samples(vals)))))
    return worst


def iterate(
    data: CaseData,
    base: BaseFlow,
    tol: float = 1e-10,
    max_iter: int = 60,
    V0: VectorField | None = None,
    f_plus0: BoundaryTrace | None = None,
) -> tuple[VectorField, BoundaryTrace | None, SolveReport]:
    """Successive substitution for the case operator, from V = 0 (and f+ = 0).

    Stops when the C1-proxy norm of the update drops below ``tol``.  Raises
    NoConvergence when updates grow five times in a row, when the iterate
    leaves the perturbation ball |V| <= vbar2 / 2, or at ``max_iter``.
    """
    grid = data.grid
    V = V0 if V0 is not None else VectorField.zeros(grid)
    fp = f_plus0 if f_plus0 is not None else BoundaryTrace.zeros(grid, "top")
    with_trace = data.case in ("C", "G")

    updates: list[float] = []
    ratios: list[float] = []
    growth = 0
    mass_defect = 0.0
    mean_integrand_last = 0.0

    for iteration in range(1, max_iter + 1):
        if data.case == "B":
            W = gamma_case_B(V, data, base)
            new_fp = fp
        else:
            W, new_fp, mean_integrand_last = gamma_case_C(V, fp, data, base)
            mass_defect = max(
                mass_defect, abs(float(np.mean(new_fp.values)) - float(np.mean(data.trace("f_minus"))))
            )

        pieces = [W.comp1.values - V.comp1.values, W.comp2.values - V.comp2.values]
        if with_trace:
            pieces.append(new_fp.values - fp.values)
        update = _c1_norm(pieces, grid)

        if updates:
            if updates[-1] > 0.0:
                ratios.append(update / updates[-1])
            growth = growth + 1 if update > updates[-1] else 0
        updates.append(update)
        V, fp = W, new_fp

        ball = max(np.max(np.abs(V.comp1.values)), np.max(np.abs(V.comp2.values)))
        if ball > base.vmin:
            raise NoConvergence(
                f"iterate left the perturbation ball (sup |V| = {ball:.3e} > {base.vmin:.3e})",
                iterations=iteration,
                final_update=update,
            )
        if growth >= 5:
            raise NoConvergence(
                "updates grew for 5 consecutive iterations; data outside the contractive regime",
                iterations=iteration,
                final_update=update,
            )

        if update < tol:
            report = SolveReport(
                iterations=iteration,
                final_update=update,
                contraction_ratio=median(ratios) if ratios else 0.0,
                converged=True,
            )
            if with_trace:
                report.residuals["mass_balance"] = mass_defect
                report.residuals["trace_closure"] = abs(mean_integrand_last)
            return V, (fp if with_trace else None), report

    raise NoConvergence(
        f"fixed point did not reach tol={tol:g} in {max_iter} iterations "
        f"(last update {updates[-1]:.3e})",
        iterations=max_iter,
        final_update=updates[-1],
    )
