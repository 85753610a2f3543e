"""Continuity and differentiability of the solution in its initial segment.

The linearized delay equation

    y(t) = xi(0) + int_0^t Df(x_s) y_s ds + int_0^t Dg(x_s) y_s domega(s)

is solved along a fixed base solution x with the same windowed Picard
machinery, contracting in the (delta*beta)-Holder norm.  The continuity
check instantiates the Gronwall-type estimate for the difference of two
solutions; the differentiability check compares finite differences of
solves against the linearized solution and watches the normalized
remainder vanish.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .paths import (GridPath, Segment, holder_norm, segment_norm,
                    segment_norm_profile)
from .solver import (_WindowedPicard, compute_contraction_constants,
                     greedy_partition, picard_solve, trivial_partition)


@dataclass(frozen=True)
class LinearizedProblem:
    """Data of the linearized equation along a solved base path."""

    coeffs: object
    base_solution: GridPath
    direction: Segment        # xi = eta^1 - eta, the initial perturbation
    omega: GridPath
    config: object

    def __post_init__(self):
        cfg = self.config
        if abs(self.base_solution.t0 + cfg.r) > 1e-12 * max(1.0, cfg.r):
            raise DomainError("base solution must start at -r")
        if self.base_solution.t_end < cfg.T - 1e-12:
            raise DomainError("base solution must cover [-r, T]")
        if abs(self.direction.delay - cfg.r) > 1e-12 * max(1.0, cfg.r):
            raise DomainError("direction delay != config r")
        if abs(self.direction.mesh - cfg.mesh) > 1e-12 * cfg.mesh:
            raise DomainError("direction mesh != config mesh")


def linearized_contraction_constant(coeffs, config, base_norm):
    """Contraction constant of the linear integral map in the
    (delta*beta)-Holder norm: L_f + L_g + K'(L_g + L_M M^delta)."""
    yc = config.young(coeffs.delta)
    return (coeffs.L_f + coeffs.L_g
            + yc.Kprime * (coeffs.L_g
                           + coeffs.L_M(base_norm) * base_norm ** coeffs.delta))


def linearized_solve(problem):
    """Solve the linearized equation; y equals the direction on [-r, 0]."""
    coeffs, cfg = problem.coeffs, problem.config
    omega, base = problem.omega, problem.base_solution
    exponent = coeffs.delta * cfg.beta
    cfg.young(coeffs.delta)   # validates delta*beta + nu > 1
    m_r, n = cfg.n_history, cfg.n_history + cfg.n_horizon
    h = cfg.mesh

    base_norm = holder_norm(base, cfg.beta)
    c_lin = linearized_contraction_constant(coeffs, cfg, base_norm)
    if c_lin <= 0.0:
        partition = trivial_partition(cfg)
    else:
        partition = greedy_partition(omega, replace(cfg, beta=exponent), c_lin)

    base_segments = [Segment(cfg.r, h, base.values[k - m_r:k + 1])
                     for k in range(m_r, n)]
    values = np.zeros((n + 1, coeffs.dim))
    values[:m_r + 1] = problem.direction.values
    j0 = omega.index_of(0.0)
    dw = np.zeros(n + 1)
    dw[m_r:n] = np.diff(omega.values[j0:j0 + cfg.n_horizon + 1, 0])

    engine = _WindowedPicard(
        drift=lambda seg, k: coeffs.Df(base_segments[k - m_r], seg),
        diffusion=lambda seg, k: coeffs.Dg(base_segments[k - m_r], seg),
        dim=coeffs.dim, m_r=m_r, h=h, exponent=exponent,
        tol=cfg.picard_tol, max_iters=cfg.picard_max_iters, dw_global=dw)
    for (ta, tb) in partition.windows():
        ia, ib = m_r + omega.index_of(ta), m_r + omega.index_of(tb)
        engine.run_window(values, ia, ib, "constant", math.inf)
    return GridPath(-cfg.r, h, values)


@dataclass(frozen=True)
class ContinuityReport:
    """Margins of the continuity estimate for two initial segments."""

    eta_gap: float            # |eta2 - eta1| in the infty,beta norm
    C: float                  # contraction constant L(T, M) used for N
    M: float
    N_T: int
    pointwise_ok: bool
    pointwise_min_margin: float   # min over grid t of log(rhs) - log(lhs)
    full_ok: bool
    full_margin: float
    full_constant: float      # 1 + T/r


def continuity_check(coeffs, eta1, eta2, omega, config):
    """Check ``|x_t(eta2) - x_t(eta1)| <= (1-2mu)^-(N(t)+1) |eta2 - eta1|``
    at every grid t, plus the full-interval form with constant 1 + T/r."""
    gap_seg = eta1.with_values(eta2.values - eta1.values)
    eta_gap = segment_norm(gap_seg, config.beta)
    if eta_gap > 1.0 + 1e-12:
        raise DomainError("continuity estimate needs |eta2 - eta1| <= 1")
    rep1 = picard_solve(coeffs, eta1, omega, config)
    rep2 = picard_solve(coeffs, eta2, omega, config)
    x1, x2 = rep1.solution, rep2.solution
    M = max(holder_norm(x1, config.beta), holder_norm(x2, config.beta))
    if coeffs.is_zero():
        C = 0.0
    else:
        constants = compute_contraction_constants(coeffs, config)
        C = constants.L(config.T, M)
    if C <= 0.0:
        # difference dynamics are inert (L_f = L_g = 0): the difference
        # path is constant past 0 and the single full window suffices
        partition = trivial_partition(config)
    else:
        if not config.mu < min(0.5, C):
            raise DomainError(f"need mu < min(1/2, L(T, M)) = {min(0.5, C)!r}")
        partition = greedy_partition(omega, config, C)

    diff = GridPath(x1.t0, x1.mesh, x2.values - x1.values)
    ts, profile = segment_norm_profile(diff, config.beta, config.r,
                                       (0.0, config.T))
    log_factor = -math.log(1.0 - 2.0 * config.mu)
    rhs = np.exp((partition.n_profile(ts) + 1) * log_factor) * eta_gap
    scale = max(eta_gap, 1e-300)
    pointwise_ok = bool(np.all(profile <= rhs + 1e-12 * scale))
    margins = np.log(np.maximum(rhs, 1e-300)) - np.log(np.maximum(profile, 1e-300))

    full_constant = 1.0 + config.T / config.r
    lhs_full = holder_norm(diff, config.beta)
    n_T = partition.n_at(config.T)
    rhs_full = full_constant * math.exp((n_T + 1) * log_factor) * eta_gap
    return ContinuityReport(
        eta_gap=eta_gap, C=C, M=M, N_T=n_T,
        pointwise_ok=pointwise_ok,
        pointwise_min_margin=float(margins.min()),
        full_ok=lhs_full <= rhs_full + 1e-12 * scale,
        full_margin=float(np.log(max(rhs_full, 1e-300))
                          - np.log(max(lhs_full, 1e-300))),
        full_constant=full_constant)


@dataclass(frozen=True)
class DifferentiabilityReport:
    """Normalized finite-difference remainders against the linearized solution."""

    table: tuple              # rows (eps, rho)
    decreasing: bool
    final_over_initial: float
    max_rho: float


def differentiability_check(coeffs, eta, direction, omega, config,
                            eps_ladder=(1e-1, 1e-2, 1e-3)):
    """Remainder table rho(eps) = sup_t |x_t(eta + eps xi) - x_t(eta) - eps y_t| / eps.

    The ladder must start at the 1e-1 scale and decrease; for C^1
    coefficients rho vanishes with eps (superlinear remainder), and for
    linear coefficients it sits at quadrature/fixed-point noise level.
    """
    eps_ladder = tuple(float(e) for e in eps_ladder)
    if not eps_ladder or any(e <= 0 for e in eps_ladder):
        raise DomainError("eps ladder must be positive")
    if not all(b < a for a, b in zip(eps_ladder, eps_ladder[1:])):
        raise DomainError("eps ladder must be strictly decreasing")
    base = picard_solve(coeffs, eta, omega, config).solution
    y = linearized_solve(LinearizedProblem(
        coeffs=coeffs, base_solution=base, direction=direction,
        omega=omega, config=config))
    rows = []
    for eps in eps_ladder:
        eta_eps = eta.with_values(eta.values + eps * direction.values)
        x_eps = picard_solve(coeffs, eta_eps, omega, config).solution
        z = GridPath(base.t0, base.mesh,
                     x_eps.values - base.values - eps * y.values)
        _, profile = segment_norm_profile(z, config.beta, config.r,
                                          (0.0, config.T))
        rows.append((eps, float(profile.max()) / eps))
    rhos = [r for _, r in rows]
    decreasing = all(b <= a * 1.1 + 1e-14 for a, b in zip(rhos, rhos[1:]))
    ratio = rhos[-1] / rhos[0] if rhos[0] > 0 else 0.0
    return DifferentiabilityReport(table=tuple(rows), decreasing=decreasing,
                                   final_over_initial=ratio,
                                   max_rho=max(rhos))
