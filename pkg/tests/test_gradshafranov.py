import numpy as np
import pytest

from steadybvp.diagnostics import bernoulli_transport_check, energy_functional, euler_residual
from steadybvp.errors import IncompatibleTraces, MassImbalance, NonPositiveInflow, NotMonotone
from steadybvp.gradshafranov import (
    Diffeomorphism,
    QuasiPeriodicTrace,
    build_profile,
    build_stream_trace,
    invert_monotone,
    solve_case_A,
    solve_case_D,
)
from steadybvp.grid import BoundaryTrace, ScalarField, StripGrid, bernoulli, curl2d, flux_through_C
from steadybvp.poisson import solve_poisson_dirichlet, solve_semilinear

TWO_PI = 2.0 * np.pi


def grid(nx=64, ny=65, L=1.0):
    return StripGrid(nx, ny, L)


class TestBuildStreamTrace:
    def test_unit_inflow(self):
        g = grid()
        psi, J = build_stream_trace(BoundaryTrace(np.ones(g.nx), "bottom"))
        assert J == 1.0
        assert psi.jump == 1.0
        assert np.max(np.abs(psi.periodic.values)) < 1e-14
        assert np.max(np.abs(psi.sample_values() - g.x)) < 1e-14

    def test_modulated_inflow_against_analytic_antiderivative(self):
        # oracle: int_0^x (1 + 0.1 sin(2 pi s)) ds = x + 0.1 (1 - cos(2 pi x)) / (2 pi)
        g = grid()
        f = BoundaryTrace(1.0 + 0.1 * np.sin(TWO_PI * g.x), "bottom")
        psi, J = build_stream_trace(f)
        assert abs(J - 1.0) < 1e-14
        exact = 0.1 * (1.0 - np.cos(TWO_PI * g.x)) / TWO_PI
        assert np.max(np.abs(psi.periodic.values - exact)) < 1e-13

    def test_double_inflow(self):
        g = grid()
        psi, J = build_stream_trace(BoundaryTrace(2.0 * np.ones(g.nx), "bottom"))
        assert J == 2.0
        assert np.max(np.abs(psi.sample_values() - 2.0 * g.x)) < 1e-14

    def test_nonpositive_inflow_rejected(self):
        g = grid()
        with pytest.raises(NonPositiveInflow):
            build_stream_trace(BoundaryTrace(np.sin(TWO_PI * g.x), "bottom"))


class TestInvertMonotone:
    def test_identity(self):
        g = grid()
        psi, J = build_stream_trace(BoundaryTrace(np.ones(g.nx), "bottom"))
        inv = invert_monotone(psi, J)
        assert np.max(np.abs(inv.X - inv.xi)) < 1e-13

    def test_double_slope(self):
        g = grid()
        psi, J = build_stream_trace(BoundaryTrace(2.0 * np.ones(g.nx), "bottom"))
        inv = invert_monotone(psi, J)
        assert np.max(np.abs(inv.X - inv.xi / 2.0)) < 1e-13

    def test_residual_substitution(self):
        g = grid()
        f = BoundaryTrace(1.0 + 0.1 * np.sin(TWO_PI * g.x), "bottom")
        psi, J = build_stream_trace(f)
        inv = invert_monotone(psi, J)
        assert np.max(np.abs(psi.eval(inv.X) - inv.xi)) < 1e-12

    def test_quasi_periodic_eval(self):
        g = grid()
        f = BoundaryTrace(1.0 + 0.1 * np.sin(TWO_PI * g.x), "bottom")
        psi, J = build_stream_trace(f)
        inv = invert_monotone(psi, J)
        xi = np.array([0.2, 0.2 + J])
        vals = inv.eval(xi)
        assert abs(vals[1] - vals[0] - 1.0) < 1e-12

    def test_not_monotone_rejected(self):
        g = grid()
        decreasing = QuasiPeriodicTrace(1.0, BoundaryTrace(-2.0 * np.sin(TWO_PI * g.x), "bottom"))
        with pytest.raises(NotMonotone):
            invert_monotone(decreasing, 1.0)


class TestBuildProfile:
    def test_constant_bernoulli(self):
        g = grid()
        psi, J = build_stream_trace(BoundaryTrace(np.ones(g.nx), "bottom"))
        prof = build_profile(BoundaryTrace(np.full(g.nx, 3.0), "bottom"), psi, J)
        assert np.max(np.abs(prof.F - 3.0)) < 1e-12
        assert np.max(np.abs(prof.Fprime)) < 1e-10

    def test_identity_inverse(self):
        g = grid(nx=64)
        psi, J = build_stream_trace(BoundaryTrace(np.ones(g.nx), "bottom"))
        prof = build_profile(BoundaryTrace(np.sin(TWO_PI * g.x), "bottom"), psi, J)
        assert np.max(np.abs(prof.F - np.sin(TWO_PI * prof.xi))) < 1e-6
        assert np.max(np.abs(prof.Fprime - TWO_PI * np.cos(TWO_PI * prof.xi))) < 1e-5

    def test_rescaled_inverse(self):
        # oracle: X(xi) = xi / 2, so F(xi) = sin(pi xi) with period J = 2
        g = grid(nx=64)
        psi, J = build_stream_trace(BoundaryTrace(2.0 * np.ones(g.nx), "bottom"))
        prof = build_profile(BoundaryTrace(np.sin(TWO_PI * g.x), "bottom"), psi, J)
        assert prof.period == 2.0
        assert np.max(np.abs(prof.F - np.sin(np.pi * prof.xi))) < 1e-6
        assert np.max(np.abs(prof.Fprime - np.pi * np.cos(np.pi * prof.xi))) < 1e-5

    def test_profile_periodicity(self):
        g = grid()
        f = BoundaryTrace(1.0 + 0.2 * np.cos(TWO_PI * g.x), "bottom")
        psi, J = build_stream_trace(f)
        prof = build_profile(BoundaryTrace(0.3 * np.sin(TWO_PI * g.x), "bottom"), psi, J)
        xi = np.linspace(0.0, J, 37)
        assert np.max(np.abs(prof.eval(xi) - prof.eval(xi + J))) <= 1e-12


class TestCaseD:
    def test_trivial_uniform(self):
        g = grid()
        c = 0.7
        f = BoundaryTrace(np.ones(g.nx), "bottom")
        h = BoundaryTrace(np.full(g.nx, c), "bottom")
        ht = BoundaryTrace(np.full(g.nx, c), "top")
        v, p, report = solve_case_D(f, h, ht, Diffeomorphism.identity(g), g)
        assert report.converged
        assert np.max(np.abs(v.comp1.values)) < 1e-10
        assert np.max(np.abs(v.comp2.values - 1.0)) < 1e-10
        assert np.max(np.abs(p.values - (c - 0.5))) < 1e-10

    def test_small_data_has_vorticity_and_small_residual(self):
        sups = []
        for ny in (33, 65):
            g = grid(ny=ny)
            f = BoundaryTrace(np.ones(g.nx), "bottom")
            h = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom")
            ht = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "top")
            v, p, report = solve_case_D(f, h, ht, Diffeomorphism.identity(g), g)
            assert report.converged
            assert np.max(np.abs(curl2d(v).values)) > 1e-4
            sups.append(euler_residual(v, p)["momentum_sup"])
        assert sups[0] < 1e-3
        assert 2.5 < sups[0] / sups[1] < 6.0

    def test_shifted_circle_map_boundary_bernoulli(self):
        # boundary-residual oracle: H = h_minus below and h_plus = h_minus(x + s) above
        g = grid()
        s = 0.3
        f = BoundaryTrace(np.ones(g.nx), "bottom")
        h = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom")
        ht = BoundaryTrace(1e-3 * np.sin(TWO_PI * (g.x + s)), "top")
        v, p, report = solve_case_D(f, h, ht, Diffeomorphism.shift(g, s), g)
        assert report.converged
        H = bernoulli(v, p).values
        h2 = g.dy**2
        assert np.max(np.abs(H[0] - h.values)) < 1e-6 + 10 * h2
        assert np.max(np.abs(H[-1] - ht.values)) < 1e-6 + 10 * h2

    def test_modulated_inflow_with_shifted_map(self):
        g = grid()
        s = 0.25
        f = BoundaryTrace(1.0 + 0.1 * np.sin(TWO_PI * g.x), "bottom")
        h = BoundaryTrace(2e-3 * np.cos(TWO_PI * g.x), "bottom")
        ht = BoundaryTrace(2e-3 * np.cos(TWO_PI * (g.x + s)), "top")
        v, p, report = solve_case_D(f, h, ht, Diffeomorphism.shift(g, s), g)
        assert report.converged
        H = bernoulli(v, p).values
        assert np.max(np.abs(H[0] - h.values)) < 1e-10
        assert np.max(np.abs(H[-1] - ht.values)) < 1e-10
        assert np.max(np.abs(v.comp2.values[0] - f.values)) < 1e-12
        assert euler_residual(v, p)["momentum_sup"] < 2e-3

    def test_incompatible_traces_rejected(self):
        g = grid()
        f = BoundaryTrace(np.ones(g.nx), "bottom")
        h = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom")
        ht = BoundaryTrace(2e-3 * np.sin(TWO_PI * g.x), "top")
        with pytest.raises(IncompatibleTraces):
            solve_case_D(f, h, ht, Diffeomorphism.identity(g), g)

    def test_bernoulli_transported(self):
        g = grid()
        f = BoundaryTrace(np.ones(g.nx), "bottom")
        h = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom")
        v, p, _ = solve_case_D(f, h, h * 1.0 + BoundaryTrace(np.zeros(g.nx), "bottom"),
                               Diffeomorphism.identity(g), g)
        assert bernoulli_transport_check(v, p) < 1e-4


class TestCaseA:
    def test_trivial_uniform(self):
        g = grid()
        ones_b = BoundaryTrace(np.ones(g.nx), "bottom")
        ones_t = BoundaryTrace(np.ones(g.nx), "top")
        h = BoundaryTrace(np.full(g.nx, 0.9), "bottom")
        v, p, report = solve_case_A(ones_b, ones_t, h, 0.0, g)
        assert report.converged
        assert np.max(np.abs(v.comp1.values)) < 1e-10
        assert np.max(np.abs(v.comp2.values - 1.0)) < 1e-10
        assert np.max(np.abs(p.values - 0.4)) < 1e-10

    def test_small_bernoulli_datum(self):
        g = grid()
        ones_b = BoundaryTrace(np.ones(g.nx), "bottom")
        ones_t = BoundaryTrace(np.ones(g.nx), "top")
        h = BoundaryTrace(1e-3 * np.sin(TWO_PI * g.x), "bottom")
        v, p, report = solve_case_A(ones_b, ones_t, h, 0.0, g)
        assert report.converged
        assert np.max(np.abs(curl2d(v).values)) > 1e-4
        assert euler_residual(v, p)["momentum_sup"] < 1e-3

    def test_prescribed_flux(self):
        g = grid()
        ones_b = BoundaryTrace(np.ones(g.nx), "bottom")
        ones_t = BoundaryTrace(np.ones(g.nx), "top")
        h = BoundaryTrace.zeros(g, "bottom")
        v, _, _ = solve_case_A(ones_b, ones_t, h, 0.2, g)
        assert abs(np.mean(v.comp1.values)) > 0.1
        assert abs(flux_through_C(v) - 0.2) < 1e-8

    def test_modulated_inflow(self):
        # exercises a genuinely non-identity stream inverse in a full solve
        g = grid()
        f = BoundaryTrace(1.0 + 0.1 * np.sin(TWO_PI * g.x), "bottom")
        h = BoundaryTrace(2e-3 * np.cos(TWO_PI * g.x), "bottom")
        v, p, report = solve_case_A(f, f, h, 0.1, g)
        assert report.converged
        H = bernoulli(v, p).values
        assert np.max(np.abs(H[0] - h.values)) < 1e-10
        assert np.max(np.abs(v.comp2.values[0] - f.values)) < 1e-12
        assert np.max(np.abs(v.comp2.values[-1] - f.values)) < 1e-12
        assert abs(flux_through_C(v) - 0.1) < 1e-6
        assert euler_residual(v, p)["momentum_sup"] < 2e-3

    def test_mass_imbalance_rejected(self):
        g = grid()
        with pytest.raises(MassImbalance):
            solve_case_A(
                BoundaryTrace(np.ones(g.nx), "bottom"),
                BoundaryTrace(np.full(g.nx, 1.001), "top"),
                BoundaryTrace.zeros(g, "bottom"),
                0.0,
                g,
            )

    def test_continuous_dependence_in_small_regime(self):
        # data scaled by s: the solution deviation from the uniform flow scales ~ s
        g = grid(ny=33)
        ones_b = BoundaryTrace(np.ones(g.nx), "bottom")
        ones_t = BoundaryTrace(np.ones(g.nx), "top")
        devs = []
        for s in (1.0, 0.5, 0.25):
            h = BoundaryTrace(s * 1e-2 * np.sin(TWO_PI * g.x), "bottom")
            v, _, report = solve_case_A(ones_b, ones_t, h, 0.0, g)
            assert report.converged
            devs.append(
                max(np.max(np.abs(v.comp1.values)), np.max(np.abs(v.comp2.values - 1.0)))
            )
        assert devs[1] < 0.75 * devs[0]
        assert devs[2] < 0.75 * devs[1]


class TestEnergyDecrease:
    def test_converged_phi_decreases_energy(self):
        g = grid(ny=33)
        f = BoundaryTrace(np.ones(g.nx), "bottom")
        h = BoundaryTrace(5e-3 * np.sin(TWO_PI * g.x), "bottom")
        psi_minus, J = build_stream_trace(f)
        prof = build_profile(h, psi_minus, J)
        bottom = BoundaryTrace(psi_minus.periodic.values, "bottom")
        top = BoundaryTrace(psi_minus.periodic.values, "top")
        init = solve_poisson_dirichlet(ScalarField.zeros(g), bottom, top)
        phi, report = solve_semilinear(prof, J, bottom, top, init)
        assert report.converged
        assert energy_functional(phi, prof, J) <= energy_functional(init, prof, J) + 1e-12
