"""Streamline transport: flow-map integration and inflow-vorticity propagation.

Characteristics of a velocity field with strictly positive vertical component
are graphs over y, so the flow map X(a, y) obeys dX/dy = b(X, y) with slope
b = v1/v2 and label X(a, 0) = a.  The transported vorticity is the inflow
trace evaluated at the backtraced label: omega(x, y) = omega0(X^-1(x, y)).

Integration is classical RK4 with one step per grid row; the slope field is
interpolated with a periodic cubic spline in x and linearly in y.  Labels are
kept in the universal cover (not wrapped) so monotonicity is preserved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TangencyDetected
from .grid import BoundaryTrace, ScalarField, StripGrid, VectorField
from .interp import PeriodicCubic, periodic_cubic_eval, periodic_cubic_moments


def slope_field(v: VectorField, vmin: float) -> ScalarField:
    """Characteristic slope b = v1/v2; requires inf |v2| >= vmin > 0."""
    if not vmin > 0.0:
        raise ValueError(f"vmin must be positive, got {vmin}")
    v2 = v.comp2.values
    low = float(np.min(np.abs(v2)))
    if low < vmin:
        raise TangencyDetected(
            f"min |v2| = {low:.3e} fell below the tangency guard {vmin:.3e}"
        )
    return ScalarField(v.grid, v.comp1.values / v2)


class _SlopeInterpolant:
    """Periodic cubic in x, linear in y between stored rows of the slope field."""

    def __init__(self, b: ScalarField):
        self.grid = b.grid
        self.values = b.values
        self.moments = periodic_cubic_moments(b.values)

    def at(self, x: np.ndarray, y: float) -> np.ndarray:
        g = self.grid
        u = min(max(y, 0.0), g.L) / g.dy
        j0 = min(int(np.floor(u)), g.ny - 2)
        t = u - j0
        r0 = periodic_cubic_eval(self.values[j0], self.moments[j0], x)
        if t == 0.0:
            return r0
        r1 = periodic_cubic_eval(self.values[j0 + 1], self.moments[j0 + 1], x)
        return (1.0 - t) * r0 + t * r1


def _rk4_step(bi: _SlopeInterpolant, x, y0: float, y1: float):
    s = y1 - y0
    k1 = bi.at(x, y0)
    k2 = bi.at(x + 0.5 * s * k1, y0 + 0.5 * s)
    k3 = bi.at(x + 0.5 * s * k2, y0 + 0.5 * s)
    k4 = bi.at(x + s * k3, y1)
    return x + (s / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _integrate(bi: _SlopeInterpolant, x0, y_from: float, y_to: float):
    h = bi.grid.dy
    span = y_to - y_from
    # ceil with slack: grid-height spans give exactly |span|/h steps, anything
    # else is split so that no step exceeds the row spacing
    nsteps = max(1, int(np.ceil(abs(span) / h - 1e-9))) if span != 0.0 else 0
    x = np.asarray(x0, dtype=float)
    y = y_from
    for k in range(nsteps):
        y_next = y_from + span * (k + 1) / nsteps
        x = _rk4_step(bi, x, y, y_next)
        y = y_next
    return x


def integrate_flow(b: ScalarField, a: float, y: float) -> float:
    """Forward flow map X(a, y): integrate dX/dy = b from 0 to y, label a.

    The result lives in the universal cover (it is not wrapped into [0, 1)).
    """
    if not 0.0 <= y <= b.grid.L:
        raise ValueError(f"height y={y} outside [0, {b.grid.L}]")
    out = _integrate(_SlopeInterpolant(b), np.asarray(a, dtype=float), 0.0, y)
    return float(out) if np.ndim(a) == 0 else out


def backtrace(b: ScalarField, x: float, y: float) -> float:
    """Label a = X^-1(x, y): integrate the characteristic down from (x, y) to y=0."""
    if not 0.0 <= y <= b.grid.L:
        raise ValueError(f"height y={y} outside [0, {b.grid.L}]")
    out = _integrate(_SlopeInterpolant(b), np.asarray(x, dtype=float), y, 0.0)
    return float(out) if np.ndim(x) == 0 else out


def backtrace_grid(b: ScalarField) -> np.ndarray:
    """Labels X^-1(x_i, y_j) for every grid point, shape (ny, nx).

    All rows are swept downward together: at the step from y_m to y_{m-1} every
    trajectory that started at height >= y_m advances one RK4 step, so the whole
    grid costs one vectorized pass.
    """
    g = b.grid
    bi = _SlopeInterpolant(b)
    labels = np.tile(g.x, (g.ny, 1))
    y = g.y
    for m in range(g.ny - 1, 0, -1):
        labels[m:, :] = _rk4_step(bi, labels[m:, :], y[m], y[m - 1])
    return labels


@dataclass(frozen=True)
class FlowMap:
    """Forward flow-map samples X(x_i, y_j) together with the slope field."""

    grid: StripGrid
    b: ScalarField
    X: np.ndarray

    def monotone_in_label(self) -> bool:
        """Discrete dX/da > 0 in the lifted sense, including the periodic wrap."""
        d = np.diff(self.X, axis=1)
        wrap = self.X[:, 0] + 1.0 - self.X[:, -1]
        return bool((d > 0.0).all() and (wrap > 0.0).all())


def compute_flow_map(b: ScalarField) -> FlowMap:
    """Integrate all labels upward through the rows in a single sweep."""
    g = b.grid
    bi = _SlopeInterpolant(b)
    X = np.empty((g.ny, g.nx))
    X[0, :] = g.x
    for m in range(g.ny - 1):
        X[m + 1, :] = _rk4_step(bi, X[m, :], g.y[m], g.y[m + 1])
    return FlowMap(g, b, X)


def solve_transport(v: VectorField, omega0: BoundaryTrace, vmin: float) -> ScalarField:
    """Solve v . grad(omega) = 0 with omega = omega0 on the bottom boundary."""
    if omega0.nx != v.grid.nx:
        raise ValueError(f"omega0 has {omega0.nx} samples, grid expects {v.grid.nx}")
    b = slope_field(v, vmin)
    labels = backtrace_grid(b)
    om0 = PeriodicCubic(omega0.values)
    return ScalarField(v.grid, om0(labels))
