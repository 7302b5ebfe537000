"""Discrete periodic strip S1 x (0, L) and differential calculus on sampled fields.

Conventions used throughout the package:

* x lives on the unit circle, sampled at ``x_i = i/nx`` (no endpoint duplication);
  x-derivatives are spectral (Fourier) and exact for resolved modes.
* y spans ``[0, L]`` inclusive, sampled at ``y_j = j L/(ny-1)``; y-derivatives are
  second-order central differences with second-order one-sided stencils at the walls.
* Field values are stored as ``(ny, nx)`` arrays, y-major.
* The rotated gradient is ``perp_gradient(psi) = (-d psi/dy, d psi/dx)``.  Stream
  functions with nonzero flux are handled as ``(jump, periodic part)`` pairs; the
  ``jump * x`` piece is differentiated analytically via the ``jump`` argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class StripGrid:
    """Uniform grid on the periodic strip: nx points on S1, ny rows from y=0 to y=L."""

    nx: int
    ny: int
    L: float

    def __post_init__(self):
        if self.nx < 4 or self.nx % 2 != 0:
            raise ValueError(f"nx must be even and >= 4, got {self.nx}")
        if self.ny < 3:
            raise ValueError(f"ny must be >= 3, got {self.ny}")
        if not self.L > 0:
            raise ValueError(f"L must be positive, got {self.L}")

    @property
    def dx(self) -> float:
        return 1.0 / self.nx

    @property
    def dy(self) -> float:
        return self.L / (self.ny - 1)

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.nx) / self.nx

    @property
    def y(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.ny)

    def meshes(self) -> tuple[np.ndarray, np.ndarray]:
        """Return (X, Y) coordinate arrays of shape (ny, nx)."""
        return np.meshgrid(self.x, self.y)


def _frozen(values: np.ndarray) -> np.ndarray:
    out = np.array(values, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class ScalarField:
    """Grid-sampled scalar; immutable after construction."""

    grid: StripGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.ny, self.grid.nx):
            raise ValueError(
                f"field shape {vals.shape} does not match grid ({self.grid.ny}, {self.grid.nx})"
            )
        if not np.isfinite(vals).all():
            raise ValueError("field contains non-finite values")
        object.__setattr__(self, "values", _frozen(vals))

    @classmethod
    def zeros(cls, grid: StripGrid) -> "ScalarField":
        return cls(grid, np.zeros((grid.ny, grid.nx)))

    @classmethod
    def full(cls, grid: StripGrid, value: float) -> "ScalarField":
        return cls(grid, np.full((grid.ny, grid.nx), float(value)))

    @classmethod
    def from_function(cls, grid: StripGrid, fn) -> "ScalarField":
        X, Y = grid.meshes()
        return cls(grid, np.asarray(fn(X, Y), dtype=float) + np.zeros_like(X))

    def __add__(self, other):
        return ScalarField(self.grid, self.values + _values_of(other))

    def __sub__(self, other):
        return ScalarField(self.grid, self.values - _values_of(other))

    def __mul__(self, other):
        return ScalarField(self.grid, self.values * _values_of(other))

    __rmul__ = __mul__

    def __neg__(self):
        return ScalarField(self.grid, -self.values)


def _values_of(obj):
    return obj.values if isinstance(obj, ScalarField) else obj


@dataclass(frozen=True)
class VectorField:
    """Pair of scalar components on a shared grid."""

    grid: StripGrid
    comp1: ScalarField
    comp2: ScalarField

    def __post_init__(self):
        if self.comp1.grid != self.grid or self.comp2.grid != self.grid:
            raise ValueError("vector components must share the grid")

    @classmethod
    def from_arrays(cls, grid: StripGrid, v1: np.ndarray, v2: np.ndarray) -> "VectorField":
        return cls(grid, ScalarField(grid, v1), ScalarField(grid, v2))

    @classmethod
    def zeros(cls, grid: StripGrid) -> "VectorField":
        return cls(grid, ScalarField.zeros(grid), ScalarField.zeros(grid))

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.grid, self.comp1 + other.comp1, self.comp2 + other.comp2)

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(self.grid, self.comp1 - other.comp1, self.comp2 - other.comp2)


@dataclass(frozen=True)
class BoundaryTrace:
    """Periodic samples of a boundary function on S1 at y=0 (bottom) or y=L (top)."""

    values: np.ndarray
    side: str

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("trace values must be one-dimensional")
        if not np.isfinite(vals).all():
            raise ValueError("trace contains non-finite values")
        if self.side not in ("bottom", "top"):
            raise ValueError(f"side must be 'bottom' or 'top', got {self.side!r}")
        object.__setattr__(self, "values", _frozen(vals))

    @property
    def nx(self) -> int:
        return self.values.size

    def mean(self) -> float:
        return float(np.mean(self.values))

    @classmethod
    def zeros(cls, grid: StripGrid, side: str) -> "BoundaryTrace":
        return cls(np.zeros(grid.nx), side)

    @classmethod
    def from_function(cls, grid: StripGrid, fn, side: str) -> "BoundaryTrace":
        return cls(np.asarray(fn(grid.x), dtype=float) + np.zeros(grid.nx), side)

    def __add__(self, other):
        return BoundaryTrace(self.values + _trace_values(other), self.side)

    def __sub__(self, other):
        return BoundaryTrace(self.values - _trace_values(other), self.side)

    def __mul__(self, other):
        return BoundaryTrace(self.values * _trace_values(other), self.side)

    __rmul__ = __mul__


def _trace_values(obj):
    return obj.values if isinstance(obj, BoundaryTrace) else obj


# ---------------------------------------------------------------------------
# spectral helpers on periodic samples (unit period, last axis)
# ---------------------------------------------------------------------------

def ddx_samples(values: np.ndarray) -> np.ndarray:
    """Spectral d/dx of periodic samples along the last axis (unit period).

    The Nyquist mode is zeroed, as usual for odd-order spectral derivatives on
    an even number of points.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    coef = np.fft.rfft(values, axis=-1)
    k = np.arange(coef.shape[-1])
    mult = 2j * np.pi * k
    if n % 2 == 0:
        mult[-1] = 0.0
    return np.fft.irfft(coef * mult, n=n, axis=-1)


def antiderivative_samples(values: np.ndarray) -> np.ndarray:
    """Spectral antiderivative S(x) = int_0^x of the mean-free part, S(0) = 0.

    Any nonzero mean of the input is ignored; callers account for the secular
    ``mean * x`` piece analytically where it matters.
    """
    values = np.asarray(values, dtype=float)
    n = values.shape[-1]
    coef = np.fft.rfft(values, axis=-1)
    k = np.arange(coef.shape[-1])
    div = 2j * np.pi * np.where(k == 0, 1.0, k)
    coef = coef / div
    coef[..., 0] = 0.0
    if n % 2 == 0:
        coef[..., -1] = 0.0
    out = np.fft.irfft(coef, n=n, axis=-1)
    return out - out[..., :1]


def trace_ddx(trace: BoundaryTrace) -> BoundaryTrace:
    return BoundaryTrace(ddx_samples(trace.values), trace.side)


# ---------------------------------------------------------------------------
# differential operators on fields
# ---------------------------------------------------------------------------

def ddx(field: ScalarField) -> ScalarField:
    """Spectral x-derivative; exact for resolved trigonometric polynomials."""
    return ScalarField(field.grid, ddx_samples(field.values))


def ddy(field: ScalarField) -> ScalarField:
    """Second-order y-derivative: central interior, one-sided at y=0 and y=L."""
    f = field.values
    h = field.grid.dy
    out = np.empty_like(f)
    out[1:-1, :] = (f[2:, :] - f[:-2, :]) / (2 * h)
    out[0, :] = (-3 * f[0, :] + 4 * f[1, :] - f[2, :]) / (2 * h)
    out[-1, :] = (3 * f[-1, :] - 4 * f[-2, :] + f[-3, :]) / (2 * h)
    return ScalarField(field.grid, out)


def perp_gradient(psi: ScalarField, jump: float = 0.0) -> VectorField:
    """Rotated gradient (-d psi/dy, d psi/dx) of psi = jump*x + periodic part.

    ``psi`` holds the periodic part; ``jump`` contributes analytically to the
    second component, so multivalued stream functions stay exactly periodic.
    """
    v2 = ddx(psi).values + jump
    return VectorField.from_arrays(psi.grid, -ddy(psi).values, v2)


def curl2d(v: VectorField) -> ScalarField:
    """Scalar curl d(v2)/dx - d(v1)/dy."""
    return ScalarField(v.grid, ddx(v.comp2).values - ddy(v.comp1).values)


def div2d(v: VectorField) -> ScalarField:
    """Divergence d(v1)/dx + d(v2)/dy."""
    return ScalarField(v.grid, ddx(v.comp1).values + ddy(v.comp2).values)


def bernoulli(v: VectorField, p: ScalarField) -> ScalarField:
    """Bernoulli field p + |v|^2 / 2."""
    return ScalarField(
        v.grid, p.values + 0.5 * (v.comp1.values**2 + v.comp2.values**2)
    )


def flux_through_C(v: VectorField) -> float:
    """Flux of v across the vertical segment {x=0}: trapezoid of v1(0, y) in y."""
    return float(np.trapezoid(v.comp1.values[:, 0], dx=v.grid.dy))


def discrete_holder_seminorm(field: ScalarField, alpha: float, max_points: int = 4096) -> float:
    """Max of |f(P) - f(Q)| / dist(P, Q)^alpha over a deterministic sample of pairs.

    Uses all grid-point pairs when nx*ny <= max_points, otherwise a fixed-stride
    subsample of the flattened grid.  The x-distance is periodic.  Diagnostic only.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    X, Y = field.grid.meshes()
    xs, ys, vals = X.ravel(), Y.ravel(), field.values.ravel()
    n = vals.size
    if n > max_points:
        stride = int(np.ceil(n / max_points))
        xs, ys, vals = xs[::stride], ys[::stride], vals[::stride]
        n = vals.size
    best = 0.0
    block = 256
    for start in range(0, n, block):
        sl = slice(start, min(start + block, n))
        dx = np.abs(xs[sl, None] - xs[None, :])
        dx = np.minimum(dx, 1.0 - dx)
        dy = ys[sl, None] - ys[None, :]
        dist = np.hypot(dx, dy)
        df = np.abs(vals[sl, None] - vals[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0.0, df / dist**alpha, 0.0)
        best = max(best, float(ratio.max()))
    return best
