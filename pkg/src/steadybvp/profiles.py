"""Periodic Bernoulli profiles: the function F (and F') of the stream value.

F maps the stream coordinate xi to the Bernoulli value carried by the
streamline through xi; it is periodic with period J, the total inflow.  The
profile is stored as a sample table over one period and evaluated by linear
interpolation with periodic wrap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ProfileFunction:
    """Sampled J-periodic profile F and its derivative F' over one period of xi."""

    period: float
    xi: np.ndarray
    F: np.ndarray
    Fprime: np.ndarray

    def __post_init__(self):
        if not self.period > 0:
            raise ValueError(f"profile period must be positive, got {self.period}")
        xi = np.asarray(self.xi, dtype=float)
        F = np.asarray(self.F, dtype=float)
        Fp = np.asarray(self.Fprime, dtype=float)
        if not (xi.ndim == 1 and xi.shape == F.shape == Fp.shape and xi.size >= 2):
            raise ValueError("profile tables must be equally sized 1-D arrays (>= 2 samples)")
        if not (np.isfinite(F).all() and np.isfinite(Fp).all()):
            raise ValueError("profile tables contain non-finite values")
        for name, arr in (("xi", xi), ("F", F), ("Fprime", Fp)):
            object.__setattr__(self, name, arr.copy())

    @classmethod
    def constant(cls, value: float, period: float, n: int = 64) -> "ProfileFunction":
        xi = np.arange(n) * (period / n)
        return cls(period, xi, np.full(n, float(value)), np.zeros(n))

    @classmethod
    def from_callable(cls, fn, fn_prime, period: float, n: int = 512) -> "ProfileFunction":
        xi = np.arange(n) * (period / n)
        return cls(period, xi, np.asarray(fn(xi), float) + np.zeros(n),
                   np.asarray(fn_prime(xi), float) + np.zeros(n))

    def _interp(self, table: np.ndarray, xi_query) -> np.ndarray:
        u = np.mod(np.asarray(xi_query, dtype=float), self.period)
        xp = np.append(self.xi, self.period)
        fp = np.append(table, table[0])
        return np.interp(u, xp, fp)

    def eval(self, xi_query) -> np.ndarray:
        """F at arbitrary stream values (periodic wrap, linear interpolation)."""
        return self._interp(self.F, xi_query)

    def eval_prime(self, xi_query) -> np.ndarray:
        """F' at arbitrary stream values."""
        return self._interp(self.Fprime, xi_query)

    def eval_smooth(self, xi_query) -> np.ndarray:
        """F through a C1 periodic cubic of the table.

        Used where F is differentiated afterwards (pressure assembly); the
        kinks of the linear read would not shrink under y-refinement.
        """
        from .interp import PeriodicCubic

        spline = PeriodicCubic(self.F)
        return spline(np.asarray(xi_query, dtype=float) / self.period)
