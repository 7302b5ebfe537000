"""TOML problem configuration parsed into a BvpSpec.

Layout::

    [problem]            # case, L, nx, ny, flux_J
    [base_flow]          # kind = "uniform" | "harmonic", strength, epsilon
    [boundary]           # f_minus / f_plus / h_minus / h_plus, each either
                         #   {fourier = [[k, a_k, b_k], ...]}  (sum of a cos(2 pi k x) + b sin(2 pi k x))
                         #   {samples = [...]}                 (nx values)
    [solver]             # tol, max_iter
    [case_d]             # T = {shift = s} | {samples = [...]}
"""

from __future__ import annotations

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .errors import InvalidConfig, UnsupportedCase
from .gradshafranov import Diffeomorphism
from .grid import BoundaryTrace, StripGrid
from .problem import CASES, OPEN_CASES, BvpSpec

_SECTIONS = {"problem", "base_flow", "boundary", "solver", "case_d"}
_KEYS = {
    "problem": {"case", "L", "nx", "ny", "flux_J"},
    "base_flow": {"kind", "strength", "epsilon"},
    "boundary": {"f_minus", "f_plus", "h_minus", "h_plus"},
    "solver": {"tol", "max_iter"},
    "case_d": {"T"},
}


def _check_keys(data: dict) -> None:
    for section in data:
        if section not in _SECTIONS:
            raise InvalidConfig(f"unknown section [{section}]")
        entries = data[section]
        if not isinstance(entries, dict):
            raise InvalidConfig(f"[{section}] must be a table")
        for key in entries:
            if key not in _KEYS[section]:
                raise InvalidConfig(f"unknown key {key!r} in [{section}]")


def realize_trace(entry, grid: StripGrid, side: str, key: str) -> BoundaryTrace:
    """Boundary trace from a {fourier = ...} or {samples = ...} table."""
    if not isinstance(entry, dict) or ("fourier" in entry) == ("samples" in entry):
        raise InvalidConfig(
            f"[boundary] {key} must be a table with exactly one of 'fourier' or 'samples'"
        )
    if "fourier" in entry:
        vals = np.zeros(grid.nx)
        rows = entry["fourier"]
        if not isinstance(rows, list):
            raise InvalidConfig(f"[boundary] {key}.fourier must be a list of [k, a_k, b_k] rows")
        for row in rows:
            if not (isinstance(row, list) and len(row) == 3):
                raise InvalidConfig(f"[boundary] {key}.fourier rows must be [k, a_k, b_k]")
            k, a, b = row
            if int(k) != k or k < 0:
                raise InvalidConfig(f"[boundary] {key}.fourier mode index {k!r} must be an integer >= 0")
            phase = 2.0 * np.pi * int(k) * grid.x
            vals += float(a) * np.cos(phase) + float(b) * np.sin(phase)
        return BoundaryTrace(vals, side)
    samples = np.asarray(entry["samples"], dtype=float)
    if samples.shape != (grid.nx,):
        raise InvalidConfig(
            f"[boundary] {key}.samples has {samples.size} values, grid expects {grid.nx}"
        )
    return BoundaryTrace(samples, side)


def _circle_map(entry, grid: StripGrid) -> Diffeomorphism:
    if not isinstance(entry, dict) or ("shift" in entry) == ("samples" in entry):
        raise InvalidConfig("[case_d] T must be a table with exactly one of 'shift' or 'samples'")
    if "shift" in entry:
        return Diffeomorphism.shift(grid, float(entry["shift"]))
    samples = np.asarray(entry["samples"], dtype=float)
    if samples.shape != (grid.nx,):
        raise InvalidConfig(f"[case_d] T.samples has {samples.size} values, grid expects {grid.nx}")
    return Diffeomorphism(samples)


def parse_config(text: str) -> BvpSpec:
    """Parse configuration text; raises InvalidConfig / UnsupportedCase."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise InvalidConfig(f"not valid TOML: {exc}") from exc
    _check_keys(data)

    problem = data.get("problem", {})
    if "case" not in problem:
        raise InvalidConfig("[problem] case is required")
    case = str(problem["case"])
    if case in OPEN_CASES:
        raise UnsupportedCase(
            f"case {case} is not supported: it is an open problem, beyond both the "
            "stream-function method and the vorticity-transport method"
        )
    if case not in CASES:
        raise InvalidConfig(f"[problem] case must be one of {CASES}, got {case!r}")

    try:
        grid = StripGrid(
            int(problem.get("nx", 128)), int(problem.get("ny", 129)), float(problem.get("L", 1.0))
        )
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(f"[problem] bad grid: {exc}") from exc

    flux = problem.get("flux_J")
    if flux is not None:
        flux = float(flux)

    base = data.get("base_flow", {})
    kind = str(base.get("kind", "uniform"))
    if kind not in ("uniform", "harmonic"):
        raise InvalidConfig(f"[base_flow] kind must be uniform or harmonic, got {kind!r}")

    boundary = data.get("boundary", {})
    traces = {}
    for key, side in (
        ("f_minus", "bottom"),
        ("f_plus", "top"),
        ("h_minus", "bottom"),
        ("h_plus", "top"),
    ):
        traces[key] = (
            realize_trace(boundary[key], grid, side, key) if key in boundary else None
        )

    solver = data.get("solver", {})
    case_d = data.get("case_d", {})
    circle_map = _circle_map(case_d["T"], grid) if "T" in case_d else None

    try:
        return BvpSpec(
            case=case,
            grid=grid,
            f_minus=traces["f_minus"],
            f_plus=traces["f_plus"],
            h_minus=traces["h_minus"],
            h_plus=traces["h_plus"],
            flux=flux,
            base_kind=kind,
            base_strength=float(base.get("strength", 1.0)),
            base_epsilon=float(base.get("epsilon", 0.05)),
            circle_map=circle_map,
            tol=float(solver.get("tol", 1e-10)),
            max_iter=int(solver.get("max_iter", 60)),
        )
    except (TypeError, ValueError) as exc:
        raise InvalidConfig(str(exc)) from exc
