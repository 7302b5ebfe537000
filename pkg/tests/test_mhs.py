import numpy as np
import pytest

from steadybvp.diagnostics import euler_residual
from steadybvp.driver import solve_bvp
from steadybvp.fixedpoint import BaseFlow, CaseData, iterate
from steadybvp.grid import BoundaryTrace, ScalarField, StripGrid, VectorField
from steadybvp.mhs import MhsState, euler_to_mhs, mhs_residual, mhs_to_euler, solve_mhs
from steadybvp.pressure import recover_pressure
from steadybvp.problem import BvpSpec

TWO_PI = 2.0 * np.pi


def grid(nx=64, ny=65, L=1.0):
    return StripGrid(nx, ny, L)


def random_fields(g, seed=0):
    rng = np.random.default_rng(seed)
    X, Y = g.meshes()
    v1 = 0.1 * np.sin(TWO_PI * X) * np.cos(np.pi * Y / g.L) + rng.uniform(-0.1, 0.1)
    v2 = 1.0 + 0.1 * np.cos(TWO_PI * X) * np.sin(np.pi * Y / g.L)
    p = 0.2 * np.cos(TWO_PI * X) + 0.1 * Y
    return VectorField.from_arrays(g, v1, v2), ScalarField(g, p)


class TestTransformation:
    def test_uniform_flow(self):
        g = grid()
        v = VectorField.from_arrays(g, np.zeros((g.ny, g.nx)), np.ones((g.ny, g.nx)))
        state = euler_to_mhs(v, ScalarField.zeros(g))
        assert np.max(np.abs(state.B.comp2.values - 1.0)) == 0.0
        assert np.max(np.abs(state.j.values)) == 0.0
        assert np.max(np.abs(state.p.values + 0.5)) == 0.0

    def test_round_trip_from_flow_side(self):
        g = grid()
        v, p = random_fields(g)
        v2, p2 = mhs_to_euler(euler_to_mhs(v, p))
        assert v2 is v
        assert np.max(np.abs(p2.values - p.values)) < 1e-14

    def test_round_trip_from_mhs_side(self):
        g = grid()
        v, p = random_fields(g, seed=3)
        state = euler_to_mhs(v, p)
        state2 = euler_to_mhs(*mhs_to_euler(state))
        assert np.max(np.abs(state2.p.values - state.p.values)) < 1e-14
        assert np.array_equal(state2.j.values, state.j.values)


class TestResidualEquivalence:
    def _converged_case_b_state(self, g):
        base = BaseFlow.uniform(g)
        data = CaseData(
            "B",
            g,
            BoundaryTrace.zeros(g, "bottom"),
            flux=0.0,
            h_minus=BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom"),
        )
        V, _, _ = iterate(data, base)
        v = base.v0 + V
        p = recover_pressure(v, anchor=float(base.p0.values[0, 0]))
        return v, p

    def test_product_rule_form_matches_flow_residual(self):
        g = grid()
        v, p = self._converged_case_b_state(g)
        state = euler_to_mhs(v, p)
        res = mhs_residual(state)
        flow = euler_residual(v, p)["momentum_sup"]
        assert res["force_balance_sup"] <= flow + 1e-12

    def test_direct_form_agrees_to_truncation(self):
        # manufactured large-amplitude state: the two discretizations of
        # grad(|B|^2 / 2) differ by the discrete product rule, O(h^2)
        sups = []
        for ny in (33, 65):
            g = grid(ny=ny)
            X, Y = g.meshes()
            v = VectorField.from_arrays(
                g,
                0.3 * np.sin(TWO_PI * X) * np.cos(np.pi * Y / g.L),
                1.0 + 0.3 * np.cos(TWO_PI * X) * np.sin(np.pi * Y / g.L),
            )
            p = ScalarField(g, 0.2 * np.cos(TWO_PI * X) * np.cos(np.pi * Y / g.L))
            res = mhs_residual(euler_to_mhs(v, p))
            sups.append(abs(res["force_balance_direct_sup"] - res["force_balance_sup"]))
        assert sups[0] < 5e-2
        assert sups[1] < 0.5 * sups[0]


class TestSolveMhs:
    def test_case_b_zero_data(self):
        g = grid()
        spec = BvpSpec(case="B", grid=g)
        state, report = solve_mhs(spec)
        assert report.converged
        assert report.iterations <= 2
        assert np.max(np.abs(state.B.comp2.values - 1.0)) <= 1e-12
        assert np.max(np.abs(state.j.values)) <= 1e-10

    def test_case_d_uniform_field(self):
        # compose the flow case-D oracle with the variable map: the wall datum c
        # returns as the magnetohydrostatic pressure itself
        g = grid()
        c = 0.3
        spec = BvpSpec(
            case="D",
            grid=g,
            h_minus=BoundaryTrace(np.full(g.nx, c), "bottom"),
            h_plus=BoundaryTrace(np.full(g.nx, c), "top"),
        )
        state, report = solve_mhs(spec)
        assert report.converged
        assert np.max(np.abs(state.B.comp2.values - 1.0)) < 1e-9
        assert np.max(np.abs(state.p.values - c)) < 1e-9

    def test_case_a_bottom_pressure_datum(self):
        g = grid()
        h = 1e-3 * np.sin(TWO_PI * g.x)
        spec = BvpSpec(
            case="A",
            grid=g,
            h_minus=BoundaryTrace(h, "bottom"),
        )
        state, report = solve_mhs(spec)
        assert report.converged
        h2 = g.dy**2
        assert np.max(np.abs(state.p.values[0] - h)) < 1e-6 + 10 * h2

    def test_case_b_small_data_force_balance(self):
        g = grid()
        spec = BvpSpec(
            case="B",
            grid=g,
            h_minus=BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom"),
        )
        state, report = solve_mhs(spec)
        assert report.converged
        assert np.max(np.abs(state.j.values)) >= 1e-3
        assert report.residuals["force_balance_sup"] <= report.residuals["momentum_sup"] + 1e-10
