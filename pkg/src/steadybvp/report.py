"""Solver outcome record shared by the elliptic and fixed-point drivers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class SolveReport:
    """Iteration outcome: counts, last update size, contraction ratio, residuals.

    ``contraction_ratio`` is the last observed update ratio for the Picard
    elliptic solve and the median of successive update ratios for the
    fixed-point iteration; it is 0 when fewer than two updates occurred.
    A converged report has ``final_update < tol`` and ``contraction_ratio < 1``.
    """

    iterations: int = 0
    final_update: float = 0.0
    contraction_ratio: float = 0.0
    converged: bool = False
    residuals: dict = field(default_factory=dict)

    def summary_lines(self) -> list[str]:
        lines = [
            f"iterations         = {self.iterations}",
            f"final_update       = {self.final_update:.3e}",
            f"contraction_ratio  = {self.contraction_ratio:.3e}",
            f"converged          = {self.converged}",
        ]
        for name in sorted(self.residuals):
            lines.append(f"residual {name:<18s} = {self.residuals[name]:.6e}")
        return lines
