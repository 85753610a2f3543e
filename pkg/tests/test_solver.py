import math

import numpy as np
import pytest

from conftest import MESH
from ydde.coefficients import CoefficientSet, make_builtin
from ydde.drivers import DriverSpec, gen_deterministic, gen_fbm
from ydde.errors import ConvergenceError, DomainError, PartitionError
from ydde.paths import (GridPath, Segment, holder_norm, holder_seminorm,
                        segment)
from ydde.solver import (SolverConfig, compute_contraction_constants,
                         contraction_constants, euler_solve, greedy_partition,
                         gronwall_check, growth_bound_check, map_F,
                         picard_solve, stopping_count_bound, trivial_partition,
                         uniqueness_probe, window_residual)
from ydde.young import YoungConstants


def const_eta(value=1.0, r=0.25, mesh=MESH, dim=1):
    n = round(r / mesh)
    return Segment(r, mesh, np.full((n + 1, dim), value))


def zero_omega(T=1.0, mesh=MESH):
    return gen_deterministic(DriverSpec(kind="zero", T=T, mesh=mesh))


class TestSolverConfig:
    def test_validation(self):
        good = dict(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        SolverConfig(**good)
        for bad in (dict(nu=0.5), dict(beta=0.7), dict(beta=0.75),
                    dict(mu=0.5), dict(mu=0.0), dict(mesh=0.3),
                    dict(r=0.33), dict(T=-1.0), dict(picard_tol=0.0)):
            with pytest.raises(DomainError):
                SolverConfig(**{**good, **bad})

    def test_young_condition_needs_delta(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        cfg.young(1.0)
        with pytest.raises(DomainError):
            cfg.young(0.5)    # 0.275 + 0.7 <= 1

    def test_grid_counts(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        assert cfg.n_history == 16 and cfg.n_horizon == 64
        assert cfg.bisect_tol == cfg.mesh


class TestContractionConstants:
    def test_eqcmax_substitution(self):
        # |g(0)| = 0, L' = 1, L_g = 1 and K = 2 give C = 2 (0 + 1 + 3) = 8
        co = make_builtin("linear_delay", A=1.0, B=0.0, Sigma=1.0, c=0.0)
        cc = contraction_constants(co, YoungConstants(1.0, 1.0))
        assert cc.young.K == pytest.approx(2.0, rel=1e-15)
        assert cc.C == pytest.approx(8.0, rel=1e-12)

    def test_zero_coefficients_rejected(self):
        co = make_builtin("linear_delay")
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        with pytest.raises(DomainError, match="C must be positive"):
            compute_contraction_constants(co, cfg)

    def test_L_reduces_without_holder_modulus(self):
        # L_M = 0 leaves L(span, M) = L_f + L_g + L_g K' span^beta
        co = make_builtin("linear_delay", A=-0.4, B=0.1, Sigma=0.3, c=0.0)
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        cc = compute_contraction_constants(co, cfg)
        for span in (0.1, 0.5, 1.0):
            expected = (co.L_f + co.L_g
                        + co.L_g * cc.young.Kprime * span ** 0.55)
            assert cc.L(span, M=7.0) == pytest.approx(expected, rel=1e-12)

    def test_cprime_below_C_on_short_windows(self):
        co = make_builtin("sin_delay", A=-0.15, B=0.1, sigma=0.05)
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        cc = compute_contraction_constants(co, cfg)
        for span in (0.01, 0.1, 0.9):
            assert cc.Cprime(span) <= cc.C


class TestGreedyPartition:
    def test_flat_driver_uniform_windows(self):
        # without driver mass the residual is span^(1-beta): all windows
        # snap to floor(w/h) cells of the analytic length (mu/C)^(1/(1-beta))
        cfg = SolverConfig(beta=0.4, nu=0.7, mesh=1 / 1024, T=1.0, r=0.25)
        omega = zero_omega(mesh=1 / 1024)
        part = greedy_partition(omega, cfg, C=8.0)
        analytic = (cfg.mu / 8.0) ** (1.0 / 0.6)
        snapped = math.floor(analytic / cfg.mesh) * cfg.mesh
        assert abs(snapped - analytic) <= cfg.mesh
        lengths = np.diff(part.times)
        assert np.allclose(lengths[:-1], snapped, atol=1e-12)
        expected = math.ceil(1.0 / snapped)
        assert abs(part.n_windows - expected) <= 2
        assert part.N in (part.n_windows, part.n_windows - 1)

    def test_residuals_below_threshold_and_maximal(self, workhorse):
        cfg, omega = workhorse["config"], workhorse["omega"]
        C = compute_contraction_constants(workhorse["coeffs"], cfg).C
        part = greedy_partition(omega, cfg, C)
        assert np.all(part.residuals <= part.threshold * (1 + 1e-12))
        for (ta, tb) in part.windows():
            nxt = tb + cfg.mesh
            if nxt <= cfg.T + 1e-12:
                assert window_residual(omega, cfg.beta, cfg.nu, ta, nxt) \
                    > part.threshold

    @pytest.mark.parametrize("seed", range(5))
    def test_count_bound_on_fbm(self, seed):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=MESH, T=1.0, r=0.25)
        omega = gen_fbm(DriverSpec(kind="fbm", T=1.0, mesh=MESH, hurst=0.75,
                                   seed=seed, amplitude=0.05))
        part = greedy_partition(omega, cfg, C=1.25)
        assert part.N <= stopping_count_bound(omega, cfg, 1.25)

    def test_first_step_too_rough(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        omega = gen_fbm(DriverSpec(kind="fbm", T=1.0, mesh=1 / 64, hurst=0.75,
                                   seed=0, amplitude=10.0))
        with pytest.raises(PartitionError, match="refine mesh or increase mu"):
            greedy_partition(omega, cfg, C=200.0)

    def test_mu_versus_C_validated(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        with pytest.raises(DomainError):
            greedy_partition(zero_omega(mesh=1 / 64), cfg, C=0.2)  # mu >= C

    def test_stopping_time_counter(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        part = greedy_partition(zero_omega(mesh=1 / 64), cfg, C=1.0)
        ts = np.array([0.0, 0.5, 1.0])
        counts = part.n_profile(ts)
        assert counts[0] == 0
        assert counts[-1] == part.N
        for t, c in zip(ts, counts):
            assert c == part.n_at(t)


def constant_drift_coeffs(value=1.0):
    """Custom set with f identically ``value`` (not a linear family member)."""
    vec = np.atleast_1d(np.asarray(value, dtype=float))

    def f(seg):
        return vec

    def zero(seg):
        return np.zeros_like(vec)

    def dzero(seg, direction):
        return np.zeros_like(vec)

    return CoefficientSet(f=f, g=zero, Df=dzero, Dg=dzero, L_f=0.0, L_g=0.0,
                          L_M=lambda M: 0.0, delta=1.0,
                          f0_norm=float(np.linalg.norm(vec)), g0_norm=0.0,
                          dim=len(vec), family="custom")


class TestMapF:
    def test_zero_dynamics_freezes_start(self):
        co = make_builtin("linear_delay")
        omega = zero_omega()
        x = GridPath(-0.25, MESH, np.linspace(0.0, 1.25, 321))
        hist = segment(x, 0.25, 0.25)
        out = map_F(x, co, omega, (0.25, 0.5), hist)
        i = x.index_of(0.25)
        assert np.allclose(out.values[i:x.index_of(0.5) + 1],
                           x.value_at(0.25), atol=0)
        assert np.array_equal(out.values[:i], x.values[:i])

    def test_unit_drift_is_linear_ramp(self):
        co = constant_drift_coeffs(1.0)
        omega = zero_omega()
        x = GridPath(-0.25, MESH, np.zeros(321))
        hist = segment(x, 0.25, 0.25)
        out = map_F(x, co, omega, (0.25, 0.75), hist)
        for t in (0.25, 0.375, 0.5, 0.75):
            assert out.value_at(t)[0] == pytest.approx(t - 0.25, abs=1e-12)

    def test_history_disagreement_rejected(self):
        co = make_builtin("linear_delay")
        omega = zero_omega()
        x = GridPath(-0.25, MESH, np.linspace(0.0, 1.25, 321))
        hist = segment(x, 0.25, 0.25)
        bad = hist.with_values(hist.values + 1.0)
        with pytest.raises(DomainError, match="disagrees with history"):
            map_F(x, co, omega, (0.25, 0.5), bad)

    def test_true_solution_is_near_fixed_point(self):
        # solve on a fine mesh, subsample, apply F: the defect is O(mesh)
        co = make_builtin("linear_delay", A=-0.5, B=0.25, Sigma=0.3, c=0.0)
        defects = []
        for factor in (1, 2):
            mesh = 1 / (256 * factor)
            fine_mesh = mesh / 8
            cfg_fine = SolverConfig(beta=0.55, nu=0.7, mesh=fine_mesh, T=1.0,
                                    r=0.25)
            omega_fine = gen_deterministic(
                DriverSpec(kind="sine", T=1.0, mesh=fine_mesh, amplitude=0.5,
                           frequency=0.5))
            eta = const_eta(mesh=fine_mesh)
            x_fine = euler_solve(co, eta, omega_fine, cfg_fine)
            x = x_fine.subsample(8)
            omega = omega_fine.subsample(8)
            hist = segment(x, 0.25, 0.25)
            out = map_F(x, co, omega, (0.25, 0.5), hist)
            i0, i1 = x.index_of(0.25), x.index_of(0.5)
            defects.append(np.abs(out.values[i0:i1 + 1]
                                  - x.values[i0:i1 + 1]).max())
        assert defects[0] <= 0.05
        assert defects[0] / defects[1] == pytest.approx(2.0, abs=0.8)


class TestPicardSolve:
    def test_zero_dynamics_constant_solution(self, workhorse):
        co = make_builtin("linear_delay")
        eta = const_eta(2.5)
        rep = picard_solve(co, eta, workhorse["omega"], workhorse["config"])
        i0 = rep.solution.index_of(0.0)
        assert np.all(rep.solution.values[i0:] == 2.5)
        assert rep.partition.N == 0
        assert rep.partition.n_windows == 1

    def test_exponential_decay_oracle(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 1024, T=1.0, r=0.25)
        co = make_builtin("linear_delay", A=-1.0, B=0.0, Sigma=0.0, c=0.0)
        rep = picard_solve(co, const_eta(mesh=1 / 1024), zero_omega(mesh=1 / 1024),
                           cfg)
        i0 = rep.solution.index_of(0.0)
        t = np.linspace(0.0, 1.0, 1025)
        err = np.abs(rep.solution.values[i0:, 0] - np.exp(-t)).max()
        assert err <= 1e-3

    def test_additive_noise_telescopes(self, workhorse):
        co = make_builtin("linear_delay", A=0.0, B=0.0, Sigma=0.0, c=0.5)
        omega, cfg = workhorse["omega"], workhorse["config"]
        rep = picard_solve(co, const_eta(), omega, cfg)
        i0 = rep.solution.index_of(0.0)
        closed = 1.0 + 0.5 * (omega.values[:, 0] - omega.values[0, 0])
        assert np.abs(rep.solution.values[i0:, 0] - closed).max() <= 1e-12

    def test_history_embedded_exactly(self, workhorse):
        rep = picard_solve(workhorse["coeffs"], workhorse["eta"],
                           workhorse["omega"], workhorse["config"])
        n_hist = workhorse["config"].n_history
        assert np.array_equal(rep.solution.values[:n_hist + 1],
                              workhorse["eta"].values)

    def test_residuals_within_tolerance(self, workhorse):
        rep = picard_solve(workhorse["coeffs"], workhorse["eta"],
                           workhorse["omega"], workhorse["config"])
        assert max(rep.window_residuals) <= workhorse["config"].picard_tol
        assert rep.ball_ok
        for w in rep.windows:
            assert w.max_iterate_norm <= w.ball_radius * (1 + 1e-9)

    def test_contraction_ratio_observed(self, workhorse):
        rep = picard_solve(workhorse["coeffs"], workhorse["eta"],
                           workhorse["omega"], workhorse["config"])
        ratios = [r for w in rep.windows for r in w.contraction_ratios]
        assert ratios, "expected at least one recorded contraction ratio"
        assert max(ratios) <= workhorse["config"].mu * 1.5

    def test_nu_seminorm_diagnostic_recorded(self, workhorse):
        rep = picard_solve(workhorse["coeffs"], workhorse["eta"],
                           workhorse["omega"], workhorse["config"])
        direct = holder_seminorm(rep.solution, 0.7, (0.0, 1.0)).seminorm
        assert rep.nu_seminorm == pytest.approx(direct, rel=1e-12)
        assert math.isfinite(rep.nu_seminorm)

    def test_nonconvergence_carries_residuals(self, workhorse):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=MESH, T=1.0, r=0.25,
                           picard_tol=1e-10, picard_max_iters=1)
        with pytest.raises(ConvergenceError) as err:
            picard_solve(workhorse["coeffs"], workhorse["eta"],
                         workhorse["omega"], cfg)
        assert err.value.residual_history

    def test_input_validation(self, workhorse):
        cfg = workhorse["config"]
        with pytest.raises(DomainError):
            picard_solve(workhorse["coeffs"], const_eta(r=0.5), workhorse["omega"],
                         cfg)
        short = gen_deterministic(DriverSpec(kind="zero", T=0.5, mesh=MESH))
        with pytest.raises(DomainError):
            picard_solve(workhorse["coeffs"], workhorse["eta"], short, cfg)


class TestEulerSolve:
    def test_zero_dynamics_constant(self, workhorse):
        co = make_builtin("linear_delay")
        eu = euler_solve(co, const_eta(1.5), workhorse["omega"],
                         workhorse["config"])
        assert np.all(eu.values == 1.5)

    def test_matches_picard_at_fixed_mesh(self, workhorse):
        rep = picard_solve(workhorse["coeffs"], workhorse["eta"],
                           workhorse["omega"], workhorse["config"])
        eu = euler_solve(workhorse["coeffs"], workhorse["eta"],
                         workhorse["omega"], workhorse["config"])
        diff = GridPath(eu.t0, eu.mesh, eu.values - rep.solution.values)
        assert holder_norm(diff, 0.55) <= 10 * workhorse["config"].picard_tol

    def test_additive_equals_picard_to_rounding(self, workhorse):
        # both telescope the same increments; only float association differs
        co = make_builtin("linear_delay", A=0.0, B=0.0, Sigma=0.0, c=0.5)
        rep = picard_solve(co, const_eta(), workhorse["omega"],
                           workhorse["config"])
        eu = euler_solve(co, const_eta(), workhorse["omega"],
                         workhorse["config"])
        assert np.abs(eu.values - rep.solution.values).max() <= 1e-13

    def test_cauchy_refinement_order(self):
        # scheme self-convergence under mesh halving, at order at least
        # min(1, beta + nu - 1); smooth data realize first order
        co = make_builtin("linear_delay", A=-0.15, B=0.05, Sigma=0.05, c=0.0)
        meshes = [1 / 128, 1 / 256, 1 / 512, 1 / 1024]
        sols = []
        for mesh in meshes:
            cfg = SolverConfig(beta=0.55, nu=0.7, mesh=mesh, T=1.0, r=0.25)
            omega = gen_deterministic(DriverSpec(kind="sine", T=1.0, mesh=mesh,
                                                 amplitude=0.1, frequency=0.5))
            sols.append(picard_solve(co, const_eta(mesh=mesh), omega,
                                     cfg).solution)
        gaps = []
        for a, b in zip(sols, sols[1:]):
            common = b.subsample(2)
            gaps.append(np.abs(common.values - a.values).max())
        orders = [math.log2(a / b) for a, b in zip(gaps, gaps[1:])]
        assert all(g > 0 for g in gaps)
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
        assert min(orders) >= min(1.0, 0.55 + 0.7 - 1.0)


class TestUniquenessProbe:
    def test_zero_and_additive_exact(self, workhorse):
        for co in (make_builtin("linear_delay"),
                   make_builtin("linear_delay", A=0.0, B=0.0, Sigma=0.0,
                                c=0.5)):
            rep = uniqueness_probe(co, const_eta(), workhorse["omega"],
                                   workhorse["config"])
            assert rep.passed
            assert rep.max_pairwise == 0.0

    def test_sin_fbm_inits_agree(self, workhorse):
        rep = uniqueness_probe(workhorse["coeffs"], workhorse["eta"],
                               workhorse["omega"], workhorse["config"])
        assert rep.passed
        assert rep.init_kinds == ("constant", "linear", "euler_perturbed")
        assert rep.max_pairwise <= rep.tolerance

    def test_init_count_validated(self, workhorse):
        with pytest.raises(DomainError):
            uniqueness_probe(workhorse["coeffs"], workhorse["eta"],
                             workhorse["omega"], workhorse["config"], n_inits=5)


class TestGrowthBound:
    def test_zero_dynamics_dominated(self, workhorse):
        co = make_builtin("linear_delay")
        eta = const_eta()
        rep = picard_solve(co, eta, workhorse["omega"], workhorse["config"])
        growth = growth_bound_check(rep, eta)
        assert growth.passed
        # N = 0 everywhere: the bound is (|eta| + 1)/(1 - mu) > |eta|
        expected = math.log((1.0 + 1.0) / 0.75) - math.log(1.0)
        assert growth.min_margin == pytest.approx(expected, rel=1e-9)

    def test_growth_factor_closed_form(self):
        # mu = 1/4, N = 3: e^(-(N+1) log(1-mu)) = (3/4)^-4 = 3.1605
        factor = math.exp(-4 * math.log(1 - 0.25))
        assert factor == pytest.approx(3.16049382716049, rel=1e-12)

    def test_linear_fbm_holds_everywhere(self, linear_scenario):
        rep = picard_solve(linear_scenario["coeffs"], linear_scenario["eta"],
                           linear_scenario["omega"], linear_scenario["config"])
        growth = growth_bound_check(rep, linear_scenario["eta"])
        assert growth.passed
        assert growth.min_margin > 0
        assert len(growth.rows) == rep.partition.n_windows


class TestGronwall:
    def test_zero_path(self, workhorse):
        cfg, omega = workhorse["config"], workhorse["omega"]
        z = GridPath(-0.25, MESH, np.zeros(321))
        rep = gronwall_check(z, A=0.1, C=1.0, omega=omega, config=cfg)
        assert rep.hypothesis_ok and rep.conclusion_ok

    def test_constant_path(self, workhorse):
        cfg, omega = workhorse["config"], workhorse["omega"]
        z = GridPath(-0.25, MESH, np.full(321, 3.0))
        rep = gronwall_check(z, A=1e-9, C=1.0, omega=omega, config=cfg)
        assert rep.hypothesis_ok and rep.conclusion_ok

    def test_solution_difference_reproduces_continuity(self, workhorse):
        cfg, omega, co = (workhorse["config"], workhorse["omega"],
                          workhorse["coeffs"])
        eta1 = workhorse["eta"]
        eta2 = eta1.with_values(eta1.values + 0.05)
        x1 = picard_solve(co, eta1, omega, cfg).solution
        x2 = picard_solve(co, eta2, omega, cfg).solution
        M = max(holder_norm(x1, cfg.beta), holder_norm(x2, cfg.beta))
        C = compute_contraction_constants(co, cfg).L(cfg.T, M)
        z = GridPath(x1.t0, x1.mesh, x2.values - x1.values)
        rep = gronwall_check(z, A=0.0, C=C, omega=omega, config=cfg,
                             n_window_samples=80)
        assert rep.hypothesis_ok
        assert rep.conclusion_ok

    def test_hypothesis_violation_reported(self, workhorse):
        cfg = workhorse["config"]
        omega = zero_omega()
        t = np.linspace(-0.25, 1.0, 321)
        z = GridPath(-0.25, MESH, 0.1 * np.sin(40 * math.pi * t))
        rep = gronwall_check(z, A=1e-3, C=0.3, omega=omega, config=cfg)
        assert not rep.hypothesis_ok
        assert rep.conclusion_ok is None
        assert "hypothesis not satisfied" in rep.message

    def test_parameter_validation(self, workhorse):
        z = GridPath(-0.25, MESH, np.zeros(321))
        with pytest.raises(DomainError):
            gronwall_check(z, A=-1.0, C=1.0, omega=workhorse["omega"],
                           config=workhorse["config"])
        with pytest.raises(DomainError):
            gronwall_check(z, A=0.0, C=0.1, omega=workhorse["omega"],
                           config=workhorse["config"])   # mu >= C


class TestTrivialPartition:
    def test_shape(self):
        cfg = SolverConfig(beta=0.55, nu=0.7, mesh=1 / 64, T=1.0, r=0.25)
        part = trivial_partition(cfg)
        assert part.N == 0
        assert part.n_windows == 1
        assert part.n_at(1.0) == 0
