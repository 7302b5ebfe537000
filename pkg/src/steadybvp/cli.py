"""Command line driver: solve, verify, convergence and mhs subcommands.

Exit codes: 0 success, 2 no convergence, 3 compatibility violated (the forced
top pressure constant is printed), 4 invalid configuration or unsupported /
ill-posed data, 5 tangency or mass imbalance.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import diagnostics
from .config import parse_config
from .driver import _CheckView, make_base_flow, solve_bvp
from .errors import (
    CompatibilityViolated,
    InvalidConfig,
    MassImbalance,
    NoConvergence,
    SteadyBvpError,
    TangencyDetected,
    UnsupportedCase,
)
from .grid import ScalarField, StripGrid, VectorField, bernoulli, curl2d
from .mhs import solve_mhs
from .problem import BvpSpec

FIELD_MAGIC = "# steady-bvp v1"
COLUMNS = "x y v1 v2 p omega H"


def _fmt(value: float) -> str:
    return f"{value:.16e}"


def emit_fields(path, grid: StripGrid, v: VectorField, p: ScalarField,
                omega: ScalarField, H: ScalarField) -> None:
    """Write the text field file: pinned header, then nx*ny rows, x-major per y-row."""
    X, Y = grid.meshes()
    cols = (X, Y, v.comp1.values, v.comp2.values, p.values, omega.values, H.values)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{FIELD_MAGIC}\n")
        fh.write(f"# nx={grid.nx} ny={grid.ny} L={_fmt(grid.L)}\n")
        fh.write(f"# columns: {COLUMNS}\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                fh.write(" ".join(_fmt(c[j, i]) for c in cols) + "\n")


def read_fields(path):
    """Read a field file back; returns (grid, v, p, omega, H)."""
    with open(path, "r") as fh:
        magic = fh.readline().strip()
        if magic != FIELD_MAGIC:
            raise InvalidConfig(f"{path}: not a field file (header {magic!r})")
        meta = {}
        for token in fh.readline().strip().lstrip("# ").split():
            key, _, value = token.partition("=")
            meta[key] = value
        fh.readline()  # columns line
        try:
            grid = StripGrid(int(meta["nx"]), int(meta["ny"]), float(meta["L"]))
        except (KeyError, ValueError) as exc:
            raise InvalidConfig(f"{path}: bad field-file header: {exc}") from exc
        data = np.loadtxt(fh)
    if data.shape != (grid.nx * grid.ny, 7):
        raise InvalidConfig(f"{path}: expected {grid.nx * grid.ny} rows of 7 columns")
    fields = [data[:, k].reshape(grid.ny, grid.nx) for k in range(2, 7)]
    v = VectorField.from_arrays(grid, fields[0], fields[1])
    return grid, v, ScalarField(grid, fields[2]), ScalarField(grid, fields[3]), ScalarField(grid, fields[4])


def emit_plotdata(path, grid: StripGrid, v: VectorField, p: ScalarField,
                  omega: ScalarField, H: ScalarField) -> None:
    """Comma-separated per-point rows for external plotting tools."""
    X, Y = grid.meshes()
    cols = (X, Y, v.comp1.values, v.comp2.values, p.values, omega.values, H.values)
    with open(path, "w", newline="\n") as fh:
        fh.write("x,y,v1,v2,p,omega,H\n")
        for j in range(grid.ny):
            for i in range(grid.nx):
                fh.write(",".join(_fmt(c[j, i]) for c in cols) + "\n")


def _write_report(path, report) -> None:
    payload = {
        "iterations": report.iterations,
        "final_update": report.final_update,
        "contraction_ratio": report.contraction_ratio,
        "converged": report.converged,
        "residuals": report.residuals,
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _print_report(report) -> None:
    for line in report.summary_lines():
        print(line)


def _load_spec(config_path: str) -> BvpSpec:
    try:
        text = Path(config_path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {config_path}: {exc}") from exc
    return parse_config(text)


def _output_path(args, spec_path: str, suffix: str) -> Path:
    if getattr(args, "output", None):
        return Path(args.output)
    return Path(spec_path).with_suffix(suffix)


def cmd_solve(args) -> int:
    spec = _load_spec(args.config)
    solution = solve_bvp(spec)
    out = _output_path(args, args.config, ".fields.txt")
    emit_fields(out, spec.grid, solution.v, solution.p, solution.omega, solution.H)
    _write_report(out.with_suffix(out.suffix + ".report.json"), solution.report)
    if args.plot_data:
        emit_plotdata(args.plot_data, spec.grid, solution.v, solution.p, solution.omega, solution.H)
    print(f"case {spec.case}: wrote {out}")
    _print_report(solution.report)
    return 0


def verify_fields(spec: BvpSpec, grid, v, p, omega, H) -> dict[str, float]:
    """Recompute residuals for stored fields under the given problem description."""
    if (grid.nx, grid.ny) != (spec.grid.nx, spec.grid.ny) or grid.L != spec.grid.L:
        raise InvalidConfig("field file grid does not match the configuration grid")
    base = None if spec.case in ("A", "D") else make_base_flow(spec)
    out = dict(diagnostics.euler_residual(v, p))
    for name, value in diagnostics.boundary_check(v, p, _CheckView(spec, base), base).items():
        out[f"boundary_{name}"] = value
    out["omega_consistency"] = float(np.max(np.abs(curl2d(v).values - omega.values)))
    out["bernoulli_consistency"] = float(np.max(np.abs(bernoulli(v, p).values - H.values)))
    return out


def cmd_verify(args) -> int:
    spec = _load_spec(args.config)
    grid, v, p, omega, H = read_fields(args.fieldfile)
    residuals = verify_fields(spec, grid, v, p, omega, H)
    for name in sorted(residuals):
        print(f"residual {name:<24s} = {residuals[name]:.17e}")
    return 0


def cmd_convergence(args) -> int:
    spec = _load_spec(args.config)
    levels = (33, 65, 129)
    sups = []
    for ny in levels:
        level_spec = spec.with_grid(StripGrid(spec.grid.nx, ny, spec.grid.L))
        solution = solve_bvp(level_spec)
        sups.append(solution.report.residuals["momentum_sup"])
        print(f"ny={ny:4d}  momentum_sup={sups[-1]:.6e}")
    for (n0, e0), (n1, e1) in zip(zip(levels, sups), zip(levels[1:], sups[1:])):
        if e1 > 0:
            order = np.log2(e0 / e1)
            print(f"observed order {n0}->{n1}: {order:.2f}")
        else:
            print(f"observed order {n0}->{n1}: exact at both levels")
    return 0


def cmd_mhs(args) -> int:
    spec = _load_spec(args.config)
    state, report = solve_mhs(spec)
    out = _output_path(args, args.config, ".fields.txt")
    # columns carry the magnetohydrostatic state: B in v1/v2, p is the
    # magnetohydrostatic pressure, omega the current density, H = -p
    emit_fields(out, spec.grid, state.B, state.p, state.j, -1.0 * state.p)
    _write_report(out.with_suffix(out.suffix + ".report.json"), report)
    print(f"mhs case {spec.case}: wrote {out}")
    _print_report(report)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="steady-bvp",
        description="Steady flow / magnetohydrostatic boundary-value solver on the periodic strip",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a configured problem and write the field file")
    p_solve.add_argument("config")
    p_solve.add_argument("-o", "--output", help="field file path (default: config with .fields.txt)")
    p_solve.add_argument("--plot-data", help="also write comma-separated plot data here")
    p_solve.set_defaults(fn=cmd_solve)

    p_verify = sub.add_parser("verify", help="recompute residuals for a stored field file")
    p_verify.add_argument("fieldfile")
    p_verify.add_argument("config")
    p_verify.set_defaults(fn=cmd_verify)

    p_conv = sub.add_parser("convergence", help="solve at ny = 33, 65, 129 and print observed orders")
    p_conv.add_argument("config")
    p_conv.set_defaults(fn=cmd_convergence)

    p_mhs = sub.add_parser("mhs", help="solve the magnetohydrostatic counterpart of the configuration")
    p_mhs.add_argument("config")
    p_mhs.add_argument("-o", "--output", help="field file path (default: config with .fields.txt)")
    p_mhs.set_defaults(fn=cmd_mhs)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CompatibilityViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(f"compatibility value = {exc.lambda_value:.17e}")
        return 3
    except (InvalidConfig, UnsupportedCase) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (TangencyDetected, MassImbalance) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except SteadyBvpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
