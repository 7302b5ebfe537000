"""Residual and property checks used by the tests and the verify command.

Derivative-based residuals are measured on interior rows only, excluding the
two rows nearest each wall: a single one-sided stencil is second order, but the
compositions appearing in momentum and curl residuals degrade to first order
on those rows.  Boundary conditions are checked separately and exactly where
they are imposed.
"""

from __future__ import annotations

import numpy as np

from .grid import (
    ScalarField,
    VectorField,
    bernoulli,
    ddx,
    ddx_samples,
    ddy,
    div2d,
    flux_through_C,
)
from .profiles import ProfileFunction

INTERIOR_MARGIN = 2


def advective_acceleration(v: VectorField) -> VectorField:
    """(v . grad) v with the grid operators."""
    a1 = v.comp1.values * ddx(v.comp1).values + v.comp2.values * ddy(v.comp1).values
    a2 = v.comp1.values * ddx(v.comp2).values + v.comp2.values * ddy(v.comp2).values
    return VectorField.from_arrays(v.grid, a1, a2)


def _interior(values: np.ndarray) -> np.ndarray:
    m = INTERIOR_MARGIN
    return values[m:-m, :]


def euler_residual(v: VectorField, p: ScalarField) -> dict[str, float]:
    """Sup and L2 norms of the momentum defect (v.grad)v + grad p, and of div v."""
    a = advective_acceleration(v)
    m1 = a.comp1.values + ddx(p).values
    m2 = a.comp2.values + ddy(p).values
    mag = np.hypot(_interior(m1), _interior(m2))
    cell = v.grid.dx * v.grid.dy
    return {
        "momentum_sup": float(mag.max()) if mag.size else 0.0,
        "momentum_l2": float(np.sqrt(np.sum(mag**2) * cell)),
        "divergence_sup": float(np.max(np.abs(div2d(v).values))),
    }


def bernoulli_transport_check(v: VectorField, p: ScalarField) -> float:
    """Sup over the interior of |v . grad H|; H is constant along streamlines."""
    H = bernoulli(v, p)
    r = v.comp1.values * ddx(H).values + v.comp2.values * ddy(H).values
    return float(np.max(np.abs(_interior(r))))


def energy_functional(phi: ScalarField, F: ProfileFunction, J: float) -> float:
    """Trapezoid value of 1/2 int |grad phi|^2 + int F(J x + phi)."""
    g = phi.grid
    X, _ = g.meshes()
    gx = ddx(phi).values
    gy = ddy(phi).values
    integrand = 0.5 * (gx**2 + gy**2) + F.eval(J * X + phi.values)
    per_column = np.trapezoid(integrand, dx=g.dy, axis=0)
    return float(np.mean(per_column))


def boundary_check(v: VectorField, p: ScalarField, spec, base=None) -> dict[str, float]:
    """Per-case sup-norm boundary mismatches, plus the flux defect where prescribed.

    ``spec`` provides case, traces (f_minus/f_plus/h_minus/h_plus, zeros when
    absent) and the prescribed flux; ``base`` supplies the background (v0, p0)
    for the perturbative cases B, C and G.
    """
    g = v.grid

    def trace_vals(trace):
        return np.zeros(g.nx) if trace is None else trace.values

    case = spec.case
    f_minus = trace_vals(getattr(spec, "f_minus", None))
    f_plus_t = getattr(spec, "f_plus", None)
    f_plus = f_minus if f_plus_t is None else f_plus_t.values
    h_minus = trace_vals(getattr(spec, "h_minus", None))
    h_plus = trace_vals(getattr(spec, "h_plus", None))

    H = bernoulli(v, p).values
    out: dict[str, float] = {}

    if case in ("A", "D"):
        if case == "A":
            out["vn_bottom"] = float(np.max(np.abs(v.comp2.values[0] - f_minus)))
            out["vn_top"] = float(np.max(np.abs(v.comp2.values[-1] - f_plus)))
            out["bernoulli_bottom"] = float(np.max(np.abs(H[0] - h_minus)))
            if spec.flux is not None:
                out["flux"] = abs(flux_through_C(v) - spec.flux)
        else:
            out["vn_bottom"] = float(np.max(np.abs(v.comp2.values[0] - f_minus)))
            out["bernoulli_bottom"] = float(np.max(np.abs(H[0] - h_minus)))
            out["bernoulli_top"] = float(np.max(np.abs(H[-1] - h_plus)))
        return out

    if base is None:
        raise ValueError(f"case {case} is perturbative; a base flow is required")
    v0, p0 = base.v0, base.p0
    H0 = bernoulli(v0, p0).values

    out["vn_bottom"] = float(np.max(np.abs(v.comp2.values[0] - v0.comp2.values[0] - f_minus)))
    if case == "B":
        out["vn_top"] = float(np.max(np.abs(v.comp2.values[-1] - v0.comp2.values[-1] - f_plus)))
        out["pressure_bottom"] = float(np.max(np.abs(p.values[0] - p0.values[0] - h_minus)))
    elif case == "C":
        out["pressure_bottom"] = float(np.max(np.abs(p.values[0] - p0.values[0] - h_minus)))
        dpx = ddx_samples(p.values[-1] - p0.values[-1]) - ddx_samples(h_plus)
        out["pressure_gradient_top"] = float(np.max(np.abs(dpx)))
    elif case == "C-full":
        out["pressure_bottom"] = float(np.max(np.abs(p.values[0] - p0.values[0] - h_minus)))
        out["pressure_top"] = float(np.max(np.abs(p.values[-1] - p0.values[-1] - h_plus)))
    elif case == "G":
        out["bernoulli_bottom"] = float(np.max(np.abs(H[0] - H0[0] - h_minus)))
        out["pressure_top"] = float(np.max(np.abs(p.values[-1] - p0.values[-1] - h_plus)))
    else:
        raise ValueError(f"unknown case {case!r}")

    if spec.flux is not None:
        out["flux"] = abs(flux_through_C(v) - spec.flux)
    return out
