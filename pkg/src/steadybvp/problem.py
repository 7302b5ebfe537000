"""Problem description shared by the library driver and the command line."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .gradshafranov import Diffeomorphism
from .grid import BoundaryTrace, StripGrid

CASES = ("A", "B", "C", "C-full", "D", "G")
OPEN_CASES = ("E", "F")


@dataclass(frozen=True)
class BvpSpec:
    """One boundary-value problem: case, grid, boundary data, flux and base flow.

    Traces left as None mean zero data, except the absolute normal traces of
    the elliptic cases A and D, which default to unit inflow.  ``flux`` is the
    prescribed flux through {x = 0}; None selects the base flow's own flux for
    the perturbative cases (and 0 for case A).
    """

    case: str
    grid: StripGrid
    f_minus: BoundaryTrace | None = None
    f_plus: BoundaryTrace | None = None
    h_minus: BoundaryTrace | None = None
    h_plus: BoundaryTrace | None = None
    flux: float | None = None
    base_kind: str = "uniform"
    base_strength: float = 1.0
    base_epsilon: float = 0.05
    circle_map: Diffeomorphism | None = None
    tol: float = 1e-10
    max_iter: int = 60

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"case must be one of {CASES}, got {self.case!r}")
        if self.base_kind not in ("uniform", "harmonic"):
            raise ValueError(f"base flow kind must be uniform or harmonic, got {self.base_kind!r}")
        for name in ("f_minus", "h_minus"):
            t = getattr(self, name)
            if t is not None and t.nx != self.grid.nx:
                raise ValueError(f"{name} has {t.nx} samples, grid expects {self.grid.nx}")
        for name in ("f_plus", "h_plus"):
            t = getattr(self, name)
            if t is not None and t.nx != self.grid.nx:
                raise ValueError(f"{name} has {t.nx} samples, grid expects {self.grid.nx}")

    def with_grid(self, grid: StripGrid) -> "BvpSpec":
        """Same problem on another grid; traces are re-used, so nx must match."""
        if grid.nx != self.grid.nx:
            raise ValueError("with_grid keeps the trace sampling; nx must match")
        return replace(self, grid=grid)
