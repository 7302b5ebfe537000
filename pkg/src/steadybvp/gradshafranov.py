"""Elliptic route for cases A and D: reduce steady flow to lap(psi) = F'(psi).

With positive inflow f on the bottom wall, psi_minus(x) = int_0^x f is strictly
increasing and its inverse turns the bottom Bernoulli datum into a periodic
profile F of the stream value.  The multivalued part J*x of the stream function
(J = total inflow) is split off analytically; the periodic remainder solves a
semilinear Dirichlet problem handled by Picard iteration in :mod:`poisson`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompatibleTraces, MassImbalance, NonPositiveInflow, NotMonotone
from .grid import (
    BoundaryTrace,
    ScalarField,
    StripGrid,
    VectorField,
    antiderivative_samples,
    ddx_samples,
    perp_gradient,
)
from .interp import PeriodicCubic
from .poisson import solve_poisson_dirichlet, solve_semilinear
from .profiles import ProfileFunction
from .report import SolveReport

__all__ = [
    "QuasiPeriodicTrace",
    "Diffeomorphism",
    "InverseStreamMap",
    "ProfileFunction",
    "build_stream_trace",
    "invert_monotone",
    "build_profile",
    "solve_case_D",
    "solve_case_A",
]


@dataclass(frozen=True)
class QuasiPeriodicTrace:
    """Boundary function of the form jump * x + periodic part."""

    jump: float
    periodic: BoundaryTrace

    def sample_values(self) -> np.ndarray:
        n = self.periodic.nx
        return self.jump * np.arange(n) / n + self.periodic.values

    def eval(self, x) -> np.ndarray:
        """Evaluate at arbitrary x using a periodic cubic spline of the periodic part."""
        return self.jump * np.asarray(x, dtype=float) + PeriodicCubic(self.periodic.values)(x)


@dataclass(frozen=True)
class Diffeomorphism:
    """Monotone circle map T: S1 -> S1 sampled at the grid nodes, lifted so T(x+1) = T(x) + 1."""

    samples: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.samples, dtype=float)
        if t.ndim != 1 or t.size < 4:
            raise ValueError("circle map needs a 1-D sample array (>= 4 samples)")
        if not (np.all(np.diff(t) > 0.0) and t[0] + 1.0 - t[-1] > 0.0):
            raise NotMonotone("circle-map samples are not strictly increasing over one period")
        object.__setattr__(self, "samples", t.copy())

    @classmethod
    def identity(cls, grid: StripGrid) -> "Diffeomorphism":
        return cls(grid.x.copy())

    @classmethod
    def shift(cls, grid: StripGrid, s: float) -> "Diffeomorphism":
        return cls(grid.x + s)

    def eval(self, x) -> np.ndarray:
        """T(x) in the lift; the deviation T(x) - x is interpolated periodically."""
        n = self.samples.size
        deviation = self.samples - np.arange(n) / n
        return np.asarray(x, dtype=float) + PeriodicCubic(deviation)(x)


@dataclass(frozen=True)
class InverseStreamMap:
    """Sampled inverse X of a strictly increasing stream trace, X(xi + J) = X(xi) + 1."""

    period: float
    xi: np.ndarray
    X: np.ndarray

    def eval(self, xi_query) -> np.ndarray:
        u = np.asarray(xi_query, dtype=float) / self.period
        deviation = self.X - self.xi / self.period
        return u + PeriodicCubic(deviation)(u)


def build_stream_trace(f: BoundaryTrace) -> tuple[QuasiPeriodicTrace, float]:
    """Bottom stream trace psi_minus(x) = int_0^x f and the total inflow J = mean(f).

    Requires f > 0 pointwise; the mean-free part of the integral is spectral
    (exact for trigonometric data) and the J*x part is carried analytically.
    """
    if np.min(f.values) <= 0.0:
        raise NonPositiveInflow(
            f"inflow trace must be strictly positive, min = {np.min(f.values):.3e}"
        )
    J = f.mean()
    periodic = BoundaryTrace(antiderivative_samples(f.values), f.side)
    return QuasiPeriodicTrace(J, periodic), J


def invert_monotone(
    psi_minus: QuasiPeriodicTrace,
    J: float,
    samples_per_period: int | None = None,
    residual_tol: float = 1e-13,
) -> InverseStreamMap:
    """Sampled inverse of the stream trace by bisection, to residual 1e-13.

    The continuous trace is the periodic cubic spline of the stored samples;
    strict monotonicity of the samples is required.
    """
    if J <= 0.0:
        raise NotMonotone(f"stream trace jump must be positive, got {J}")
    vals = psi_minus.sample_values()
    if not (np.all(np.diff(vals) > 0.0) and vals[0] + J - vals[-1] > 0.0):
        raise NotMonotone("stream-trace samples are not strictly increasing")

    n = psi_minus.periodic.nx
    m = samples_per_period if samples_per_period is not None else 4 * n
    spline = PeriodicCubic(psi_minus.periodic.values)
    xi = np.arange(m) * (J / m)

    lo = np.zeros(m)
    hi = np.ones(m)
    psi0 = vals[0]
    # bisection on psi(x) - psi(0) = xi; ~60 halvings reach double-precision width
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        val = J * mid + spline(mid) - psi0
        above = val > xi
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    X = 0.5 * (lo + hi)
    residual = np.max(np.abs(J * X + spline(X) - psi0 - xi))
    if residual > residual_tol * max(1.0, J):
        raise NotMonotone(f"bisection residual {residual:.3e} exceeds {residual_tol:g}")
    return InverseStreamMap(J, xi, X)


def build_profile(h_minus: BoundaryTrace, psi_minus: QuasiPeriodicTrace, J: float) -> ProfileFunction:
    """Bernoulli profile F(xi) = h_minus(X(xi)) with F'(xi) = h_minus'(X(xi)) / f(X(xi)).

    The chain rule uses psi_minus' = f, recovered spectrally from the stored trace.
    """
    inverse = invert_monotone(psi_minus, J, samples_per_period=8 * psi_minus.periodic.nx)
    h_spline = PeriodicCubic(h_minus.values)
    hprime_spline = PeriodicCubic(ddx_samples(h_minus.values))
    f_spline = PeriodicCubic(ddx_samples(psi_minus.periodic.values))
    X = inverse.X
    F = h_spline(X)
    Fprime = hprime_spline(X) / (J + f_spline(X))
    return ProfileFunction(J, inverse.xi, F, Fprime)


def _velocity_pressure(
    grid: StripGrid, phi: ScalarField, J: float, profile: ProfileFunction
) -> tuple[VectorField, ScalarField]:
    v = perp_gradient(phi, jump=J)
    X, _ = grid.meshes()
    speed2 = v.comp1.values**2 + v.comp2.values**2
    p = ScalarField(grid, profile.eval_smooth(J * X + phi.values) - 0.5 * speed2)
    return v, p


def _fill_residuals(report: SolveReport, v: VectorField, p: ScalarField) -> None:
    from .diagnostics import euler_residual

    res = euler_residual(v, p)
    report.residuals["momentum_sup"] = res["momentum_sup"]
    report.residuals["divergence_sup"] = res["divergence_sup"]


def solve_case_D(
    f: BoundaryTrace,
    h_minus: BoundaryTrace,
    h_plus: BoundaryTrace,
    T: Diffeomorphism,
    grid: StripGrid,
    tol: float = 1e-10,
    max_iter: int = 100,
    compat_tol: float = 1e-8,
) -> tuple[VectorField, ScalarField, SolveReport]:
    """Case D: inflow f on the bottom, Bernoulli data h on both walls, h_plus = h_minus o T.

    Returns v = perp_gradient(psi) and p = F(psi) - |v|^2 / 2.
    """
    composed = PeriodicCubic(h_minus.values)(T.eval(grid.x))
    mismatch = float(np.max(np.abs(h_plus.values - composed)))
    if mismatch > compat_tol:
        raise IncompatibleTraces(
            f"sup |h_plus - h_minus o T| = {mismatch:.3e} exceeds {compat_tol:g}"
        )

    psi_minus, J = build_stream_trace(f)
    profile = build_profile(h_minus, psi_minus, J)

    top_vals = psi_minus.eval(T.eval(grid.x)) - J * grid.x
    bottom = BoundaryTrace(psi_minus.periodic.values, "bottom")
    top = BoundaryTrace(top_vals, "top")
    init = solve_poisson_dirichlet(ScalarField.zeros(grid), bottom, top)
    phi, report = solve_semilinear(profile, J, bottom, top, init, tol=tol, max_iter=max_iter)

    v, p = _velocity_pressure(grid, phi, J, profile)
    _fill_residuals(report, v, p)
    return v, p, report


def solve_case_A(
    f_minus: BoundaryTrace,
    f_plus: BoundaryTrace,
    h_minus: BoundaryTrace,
    J: float,
    grid: StripGrid,
    tol: float = 1e-10,
    max_iter: int = 100,
    mass_tol: float | None = None,
) -> tuple[VectorField, ScalarField, SolveReport]:
    """Case A: normal traces on both walls, Bernoulli datum on the bottom, flux J.

    The additive constant between the wall stream traces is the flux through
    the vertical segment {x = 0}; the theory does not pin it down, so it is an
    explicit input.
    """
    mean_minus, mean_plus = f_minus.mean(), f_plus.mean()
    if mass_tol is None:
        mass_tol = 1e-10 * (1.0 + abs(mean_minus))
    if abs(mean_plus - mean_minus) >= mass_tol:
        raise MassImbalance(
            f"mean(f_plus) - mean(f_minus) = {mean_plus - mean_minus:.3e} exceeds {mass_tol:.3e}"
        )

    psi_minus, J_mass = build_stream_trace(f_minus)
    profile = build_profile(h_minus, psi_minus, J_mass)

    bottom = BoundaryTrace(psi_minus.periodic.values, "bottom")
    top = BoundaryTrace(-J + antiderivative_samples(f_plus.values), "top")
    init = solve_poisson_dirichlet(ScalarField.zeros(grid), bottom, top)
    phi, report = solve_semilinear(profile, J_mass, bottom, top, init, tol=tol, max_iter=max_iter)

    v, p = _velocity_pressure(grid, phi, J_mass, profile)
    _fill_residuals(report, v, p)
    return v, p, report
