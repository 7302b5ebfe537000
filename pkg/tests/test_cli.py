import json

import numpy as np
import pytest

from steadybvp.cli import emit_fields, emit_plotdata, main, read_fields
from steadybvp.config import parse_config
from steadybvp.errors import InvalidConfig, UnsupportedCase
from steadybvp.grid import ScalarField, StripGrid, VectorField

TWO_PI = 2.0 * np.pi

MINIMAL_B = """
[problem]
case = "B"
L = 1.0
nx = 32
ny = 33
"""

CASE_B_SMALL = """
[problem]
case = "B"
nx = 32
ny = 33

[boundary]
h_minus = {fourier = [[1, 0.0, 0.001]]}
"""


class TestParseConfig:
    def test_minimal_case_b_defaults(self):
        spec = parse_config(MINIMAL_B)
        assert spec.case == "B"
        assert spec.grid == StripGrid(32, 33, 1.0)
        assert spec.f_minus is None and spec.h_minus is None
        assert spec.flux is None
        assert spec.base_kind == "uniform"
        assert spec.tol == 1e-10

    def test_open_case_rejected(self):
        with pytest.raises(UnsupportedCase):
            parse_config('[problem]\ncase = "E"\n')
        with pytest.raises(UnsupportedCase):
            parse_config('[problem]\ncase = "F"\n')

    def test_unknown_case_rejected(self):
        with pytest.raises(InvalidConfig):
            parse_config('[problem]\ncase = "Z"\n')

    def test_bad_toml_rejected(self):
        with pytest.raises(InvalidConfig):
            parse_config("[problem\ncase=B")

    def test_unknown_key_rejected(self):
        with pytest.raises(InvalidConfig):
            parse_config('[problem]\ncase = "B"\nflux = 1.0\n')

    def test_fourier_trace_realization(self):
        spec = parse_config(
            '[problem]\ncase = "B"\nnx = 64\nny = 9\n'
            "[boundary]\nh_minus = {fourier = [[1, 0.0, 0.001]]}\n"
        )
        x = spec.grid.x
        assert np.max(np.abs(spec.h_minus.values - 0.001 * np.sin(TWO_PI * x))) < 1e-15

    def test_samples_trace_and_length_check(self):
        good = parse_config(
            '[problem]\ncase = "B"\nnx = 4\nny = 9\n'
            "[boundary]\nf_minus = {samples = [0.0, 0.1, 0.0, -0.1]}\n"
        )
        assert np.allclose(good.f_minus.values, [0.0, 0.1, 0.0, -0.1])
        with pytest.raises(InvalidConfig):
            parse_config(
                '[problem]\ncase = "B"\nnx = 8\nny = 9\n'
                "[boundary]\nf_minus = {samples = [0.0, 0.1]}\n"
            )

    def test_case_d_shift_map(self):
        spec = parse_config(
            '[problem]\ncase = "D"\nnx = 16\nny = 9\n[case_d]\nT = {shift = 0.25}\n'
        )
        assert np.allclose(spec.circle_map.samples, spec.grid.x + 0.25)


class TestFieldFileRoundTrip:
    def _solution_fields(self, g):
        X, Y = g.meshes()
        v = VectorField.from_arrays(g, 0.1 * np.sin(TWO_PI * X), 1.0 + 0.05 * Y)
        p = ScalarField(g, 0.3 * np.cos(TWO_PI * X) * Y)
        omega = ScalarField(g, np.sin(TWO_PI * X) + Y)
        H = ScalarField(g, p.values + 0.5)
        return v, p, omega, H

    def test_bit_exact_round_trip(self, tmp_path):
        g = StripGrid(16, 9, 1.25)
        v, p, omega, H = self._solution_fields(g)
        path = tmp_path / "fields.txt"
        emit_fields(path, g, v, p, omega, H)
        g2, v2, p2, omega2, H2 = read_fields(path)
        assert g2 == g
        assert np.array_equal(v2.comp1.values, v.comp1.values)
        assert np.array_equal(v2.comp2.values, v.comp2.values)
        assert np.array_equal(p2.values, p.values)
        assert np.array_equal(omega2.values, omega.values)
        assert np.array_equal(H2.values, H.values)

    def test_header_and_ordering(self, tmp_path):
        g = StripGrid(4, 3, 1.0)
        v, p, omega, H = self._solution_fields(g)
        path = tmp_path / "fields.txt"
        emit_fields(path, g, v, p, omega, H)
        lines = path.read_text().splitlines()
        assert lines[0] == "# steady-bvp v1"
        assert lines[1].startswith("# nx=4 ny=3 L=")
        assert lines[2] == "# columns: x y v1 v2 p omega H"
        assert len(lines) == 3 + 12
        first = [float(tok) for tok in lines[3].split()]
        second = [float(tok) for tok in lines[4].split()]
        assert first[:2] == [0.0, 0.0]
        assert second[0] == 0.25 and second[1] == 0.0  # x-major within the y-row

    def test_plotdata_format(self, tmp_path):
        g = StripGrid(4, 3, 1.0)
        v, p, omega, H = self._solution_fields(g)
        path = tmp_path / "plot.csv"
        emit_plotdata(path, g, v, p, omega, H)
        lines = path.read_text().splitlines()
        assert lines[0] == "x,y,v1,v2,p,omega,H"
        assert len(lines) == 1 + 12
        assert len(lines[1].split(",")) == 7


class TestCliCommands:
    def _write_config(self, tmp_path, text, name="problem.toml"):
        cfg = tmp_path / name
        cfg.write_text(text)
        return cfg

    def test_solve_zero_case_b(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, MINIMAL_B)
        assert main(["solve", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "converged          = True" in out
        report = json.loads((tmp_path / "problem.fields.txt.report.json").read_text())
        assert report["iterations"] <= 2

    def test_solve_deterministic_bytes(self, tmp_path):
        cfg = self._write_config(tmp_path, CASE_B_SMALL)
        out1 = tmp_path / "a.txt"
        out2 = tmp_path / "b.txt"
        assert main(["solve", str(cfg), "-o", str(out1)]) == 0
        assert main(["solve", str(cfg), "-o", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_unsupported_case_exit_code(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, '[problem]\ncase = "E"\n')
        assert main(["solve", str(cfg)]) == 4
        assert "open problem" in capsys.readouterr().err

    def test_invalid_config_exit_code(self, tmp_path):
        cfg = self._write_config(tmp_path, "[problem]\n")
        assert main(["solve", str(cfg)]) == 4

    def test_compatibility_violation_exit_code(self, tmp_path, capsys):
        cfg = self._write_config(
            tmp_path,
            '[problem]\ncase = "C-full"\nnx = 32\nny = 33\n'
            "[boundary]\nh_plus = {fourier = [[0, 0.1, 0.0]]}\n",
        )
        assert main(["solve", str(cfg)]) == 3
        captured = capsys.readouterr()
        assert "compatibility value" in captured.out

    def test_mass_imbalance_exit_code(self, tmp_path):
        cfg = self._write_config(
            tmp_path,
            '[problem]\ncase = "B"\nnx = 32\nny = 33\n'
            "[boundary]\nf_minus = {fourier = [[0, 0.0, 0.0]]}\n"
            "f_plus = {fourier = [[0, 0.001, 0.0]]}\n",
        )
        assert main(["solve", str(cfg)]) == 5

    def test_no_convergence_exit_code(self, tmp_path):
        cfg = self._write_config(
            tmp_path,
            '[problem]\ncase = "B"\nnx = 32\nny = 33\n'
            "[boundary]\nh_minus = {fourier = [[1, 0.0, 3.0]]}\n"
            "[solver]\nmax_iter = 25\n",
        )
        assert main(["solve", str(cfg)]) == 2

    def test_verify_reproduces_residuals(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, CASE_B_SMALL)
        out = tmp_path / "fields.txt"
        assert main(["solve", str(cfg), "-o", str(out)]) == 0
        report = json.loads((tmp_path / "fields.txt.report.json").read_text())
        capsys.readouterr()
        assert main(["verify", str(out), str(cfg)]) == 0
        printed = {}
        for line in capsys.readouterr().out.splitlines():
            if line.startswith("residual "):
                name, _, value = line[len("residual "):].partition("=")
                printed[name.strip()] = float(value)
        for key in ("momentum_sup", "divergence_sup", "boundary_pressure_bottom"):
            assert abs(printed[key] - report["residuals"][key]) <= 1e-14
        assert printed["omega_consistency"] <= 1e-12

    def test_verify_grid_mismatch(self, tmp_path):
        cfg = self._write_config(tmp_path, CASE_B_SMALL)
        out = tmp_path / "fields.txt"
        assert main(["solve", str(cfg), "-o", str(out)]) == 0
        other = self._write_config(tmp_path, MINIMAL_B.replace("ny = 33", "ny = 17"), "other.toml")
        assert main(["verify", str(out), str(other)]) == 4

    def test_convergence_command(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, CASE_B_SMALL)
        assert main(["convergence", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert "observed order 65->129" in out

    def test_mhs_command(self, tmp_path, capsys):
        cfg = self._write_config(tmp_path, MINIMAL_B)
        assert main(["mhs", str(cfg)]) == 0
        out = tmp_path / "problem.fields.txt"
        grid, B, p, j, H = read_fields(out)
        assert np.max(np.abs(B.comp2.values - 1.0)) < 1e-12
        assert np.max(np.abs(p.values + 0.5)) < 1e-12
        assert np.max(np.abs(j.values)) < 1e-12
