"""Constructive pathwise solver for Young delay equations.

The equation ``dx(t) = f(x_t) dt + g(x_t) domega(t)`` with history segment
``eta`` is solved window by window (method of steps).  Window ends are the
greedy stopping times where

    (t - t_i)^(1-beta) + (t - t_i)^(nu-beta) |||omega|||_{nu, [t_i, t]}

first reaches ``mu / C``; on each window the integral map

    F(x)(t) = x(t_i) + int f(x_s) ds + int g(x_s) domega(s)

is a contraction and is iterated to a fixed point, with left-rectangle and
left-point Young quadrature so that the discrete fixed point is exactly the
one-pass Euler recursion.  Growth and Gronwall-type bound checkers verify
the estimates the window construction guarantees.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConvergenceError, DomainError, PartitionError
from .paths import (GridPath, Segment, _row_norms, _snap_index, holder_norm,
                    holder_seminorm, segment, segment_norm,
                    segment_norm_profile)
from .young import YoungConstants

_INIT_KINDS = ("constant", "linear", "euler_perturbed")


@dataclass(frozen=True)
class SolverConfig:
    """Exponents, grid and iteration controls for one solve."""

    beta: float
    nu: float
    mesh: float
    T: float
    r: float
    mu: float = 0.25
    picard_tol: float = 1e-10
    picard_max_iters: int = 80
    bisect_tol: float | None = None

    def __post_init__(self):
        if not 0.5 < self.nu <= 1.0:
            raise DomainError(f"need nu in (1/2, 1], got {self.nu!r}")
        if not 0.0 < self.beta < self.nu:
            raise DomainError(f"need 0 < beta < nu, got beta={self.beta!r}")
        # mu < 1/2 keeps every solve usable by the Gronwall-type estimates.
        if not 0.0 < self.mu < 0.5:
            raise DomainError(f"need mu in (0, 1/2), got {self.mu!r}")
        if self.mesh <= 0 or self.T <= 0 or self.r <= 0:
            raise DomainError("mesh, T and r must be positive")
        _snap_index(self.r, self.mesh, "delay r")
        _snap_index(self.T, self.mesh, "horizon T")
        if self.picard_tol <= 0 or self.picard_max_iters < 1:
            raise DomainError("picard_tol must be > 0 and max_iters >= 1")
        if self.bisect_tol is None:
            object.__setattr__(self, "bisect_tol", self.mesh)

    @property
    def n_history(self):
        return _snap_index(self.r, self.mesh, "delay r")

    @property
    def n_horizon(self):
        return _snap_index(self.T, self.mesh, "horizon T")

    def young(self, delta=1.0):
        if self.beta * delta + self.nu <= 1.0:
            raise DomainError(
                f"need beta*delta + nu > 1, got {self.beta * delta + self.nu!r}")
        return YoungConstants(self.beta, self.nu, delta)


@dataclass(frozen=True)
class ContractionConstants:
    """Constants of the window construction for one coefficient set."""

    C: float                 # stopping-time constant 2(|g(0)| + L' + L_g (K+1))
    Lprime: float            # max(L_f, |f(0)|)
    young: YoungConstants
    L_g: float
    L_f: float
    L_M: object
    delta: float
    g0_norm: float

    def Cprime(self, span):
        """Window-wise constant (1 + span^beta)(|g0| + L_g + L_g K span^beta + L')."""
        b = self.young.beta
        return (1.0 + span ** b) * (self.g0_norm + self.L_g
                                    + self.L_g * self.young.K * span ** b
                                    + self.Lprime)

    def L(self, span, M):
        """Contraction constant L(span, M) of the difference estimate."""
        b, d = self.young.beta, self.delta
        return (self.L_f + self.L_g
                + self.L_g * self.young.Kprime * span ** b
                + self.young.Kprime * self.L_M(M) * M ** d * span ** (d * b))


def contraction_constants(coeffs, young):
    """C, C'(span) and L(span, M) for given Young constants."""
    C = 2.0 * (coeffs.g0_norm + coeffs.Lprime + coeffs.L_g * (young.K + 1.0))
    if C <= 0.0:
        raise DomainError("C must be positive to fix mu < C "
                          "(coefficients are identically zero)")
    return ContractionConstants(C=C, Lprime=coeffs.Lprime, young=young,
                                L_g=coeffs.L_g, L_f=coeffs.L_f,
                                L_M=coeffs.L_M, delta=coeffs.delta,
                                g0_norm=coeffs.g0_norm)


def compute_contraction_constants(coeffs, config):
    """C, C'(span) and L(span, M) per the window construction."""
    return contraction_constants(coeffs, config.young(coeffs.delta))


# ---------------------------------------------------------------------------
# Greedy stopping-time partition.

def _scalar_holder_nodes(vals, h, exponent, i0, i1):
    """Grid Holder seminorm of a scalar array between node indices."""
    best = 0.0
    for g in range(1, i1 - i0 + 1):
        m = np.abs(vals[i0 + g:i1 + 1] - vals[i0:i1 + 1 - g]).max()
        best = max(best, m / (g * h) ** exponent)
    return best


def window_residual(omega, beta, nu, s, t):
    """(t-s)^(1-beta) + (t-s)^(nu-beta) |||omega|||_{nu, [s, t]} on the grid."""
    i0 = omega.index_of(s, "window start")
    i1 = omega.index_of(t, "window end")
    if i1 <= i0:
        raise DomainError("window is empty")
    span = (i1 - i0) * omega.mesh
    om = _scalar_holder_nodes(omega.values[:, 0], omega.mesh, nu, i0, i1)
    return span ** (1.0 - beta) + span ** (nu - beta) * om


@dataclass(frozen=True)
class GreedyPartition:
    """Stopping times with their residuals and defining constants."""

    times: np.ndarray
    residuals: np.ndarray
    threshold: float          # mu / C
    C: float
    mu: float
    beta: float
    nu: float
    clamped_final: bool       # final point is the horizon clamp, not eq. residual

    @property
    def n_windows(self):
        return len(self.times) - 1

    @property
    def stopping_times(self):
        """True stopping times in (0, T] (the clamp at T does not count)."""
        last = self.n_windows - (1 if self.clamped_final else 0)
        return self.times[1:last + 1]

    @property
    def N(self):
        return len(self.stopping_times)

    def n_at(self, t):
        """N(t, omega): number of stopping times in (0, t]."""
        return int(np.sum(self.stopping_times <= t + 1e-9 * max(1.0, abs(t))))

    def n_profile(self, ts):
        st = self.stopping_times
        slack = 1e-9 * np.maximum(1.0, np.abs(ts))
        return np.searchsorted(st, ts + slack, side="right")

    def windows(self):
        return list(zip(self.times[:-1], self.times[1:]))


def greedy_partition(omega, config, C):
    """Greedy maximal windows with residual at most mu / C, snapped to the grid.

    Each window end is the largest grid node whose residual stays below the
    threshold, so the defining equality holds as a one-sided inequality with
    the reported residual; the final window is clamped at the horizon.
    """
    if C <= 0.0:
        raise DomainError("greedy partition needs C > 0")
    if not config.mu < min(1.0, C):
        raise DomainError(f"need mu < min(1, C) = {min(1.0, C)!r}, got {config.mu!r}")
    i_end = omega.index_of(config.T, "horizon T")
    i0 = omega.index_of(0.0, "origin")
    threshold = config.mu / C
    h = omega.mesh
    vals = omega.values[:, 0]
    beta, nu = config.beta, config.nu

    def residual(ia, ib):
        span = (ib - ia) * h
        om = _scalar_holder_nodes(vals, h, nu, ia, ib)
        return span ** (1.0 - beta) + span ** (nu - beta) * om

    cuts = [i0]
    residuals = []
    clamped = False
    while cuts[-1] < i_end:
        ia = cuts[-1]
        if residual(ia, ia + 1) > threshold:
            raise PartitionError(
                "refine mesh or increase mu: the first greedy step at "
                f"t={omega.t0 + ia * h!r} is below one mesh cell")
        # gallop to bracket the largest admissible node, then bisect
        step = 1
        good = ia + 1
        while good < i_end:
            nxt = min(ia + 2 * step, i_end)
            if residual(ia, nxt) <= threshold:
                good, step = nxt, nxt - ia
            else:
                lo, hi = good, nxt     # residual(lo) ok, residual(hi) too big
                while hi - lo > 1:
                    mid = (lo + hi) // 2
                    if residual(ia, mid) <= threshold:
                        lo = mid
                    else:
                        hi = mid
                good = lo
                break
        res = residual(ia, good)
        if good == i_end and res < threshold:
            clamped = True
        cuts.append(good)
        residuals.append(res)
    times = omega.t0 + h * np.asarray(cuts, dtype=float)
    return GreedyPartition(times=times, residuals=np.asarray(residuals),
                           threshold=threshold, C=C, mu=config.mu,
                           beta=beta, nu=nu, clamped_final=clamped)


def trivial_partition(config):
    """Single full window for identically zero dynamics (no stopping times)."""
    return GreedyPartition(times=np.array([0.0, config.T]),
                           residuals=np.array([0.0]),
                           threshold=math.inf, C=0.0, mu=config.mu,
                           beta=config.beta, nu=config.nu, clamped_final=True)


def stopping_count_bound(omega, config, C):
    """Right side of the polynomial bound on N(T, omega):
    ``2^(k-1) (C/mu)^k (T^(k(1-beta)) + T^(k(nu-beta)) |||omega|||_nu^k)``
    with k the smallest integer such that k (nu - beta) >= 1.
    """
    k = math.ceil(1.0 / (config.nu - config.beta))
    om = holder_seminorm(omega, config.nu, (0.0, config.T)).seminorm
    T = config.T
    return (2.0 ** (k - 1) * (C / config.mu) ** k
            * (T ** (k * (1.0 - config.beta))
               + T ** (k * (config.nu - config.beta)) * om ** k))


# ---------------------------------------------------------------------------
# The integral map F and windowed Picard iteration.

def _zero_history_norm(diff, h, exponent):
    """Full Holder norm of a path that vanishes up to the window start.

    ``diff`` holds the values at offsets 1..w past the window start; pairs
    into the (zero) history are dominated by the pair with the start node,
    which the padded scan includes.
    """
    w = diff.shape[0]
    padded = np.vstack([np.zeros((1, diff.shape[1])), diff])
    norms = _row_norms(padded)
    semi = 0.0
    for g in range(1, w + 1):
        m = _row_norms(padded[g:] - padded[:-g]).max()
        semi = max(semi, m / (g * h) ** exponent)
    return float(norms.max()) + semi


def _holder_norm_nodes(values, h, exponent, i0, i1):
    """Full Holder norm of array nodes i0..i1 (sup plus pair-scan seminorm)."""
    v = values[i0:i1 + 1]
    semi = 0.0
    for g in range(1, i1 - i0 + 1):
        m = _row_norms(v[g:] - v[:-g]).max()
        semi = max(semi, m / (g * h) ** exponent)
    return float(_row_norms(v).max()) + semi


@dataclass(frozen=True)
class WindowRecord:
    """Per-window Picard diagnostics."""

    t_start: float
    t_end: float
    iterations: int
    residual: float
    ball_radius: float
    max_iterate_norm: float
    contraction_ratios: tuple
    split: bool = False


@dataclass(frozen=True)
class SolveReport:
    """Solution path plus the diagnostics of the windowed fixed-point solve."""

    solution: GridPath
    partition: GreedyPartition
    windows: tuple
    config: SolverConfig
    eta_norm: float
    ball_ok: bool
    nu_seminorm: float        # grid nu-seminorm of the solution on [0, T]
    first_iterate: GridPath | None
    wall_time: float

    @property
    def window_iterations(self):
        return [w.iterations for w in self.windows]

    @property
    def window_residuals(self):
        return [w.residual for w in self.windows]


class _WindowedPicard:
    """Shared machinery: iterate the integral map window by window."""

    def __init__(self, drift, diffusion, dim, m_r, h, exponent,
                 tol, max_iters, dw_global):
        self.drift = drift
        self.diffusion = diffusion
        self.dim = dim
        self.m_r = m_r
        self.h = h
        self.exponent = exponent
        self.tol = tol
        self.max_iters = max_iters
        self.dw = dw_global
        self.first_iter_sink = None
        # iterate beyond tol down to a polish floor so that distinct
        # initializations land on numerically identical fixed points
        self.stop_tol = max(tol * 1e-2, 1e-15)

    def _eval_sums(self, values, ia, ib):
        drift_vals = np.empty((ib - ia, self.dim))
        diff_vals = np.empty((ib - ia, self.dim))
        for k in range(ia, ib):
            seg = Segment(self.m_r * self.h, self.h,
                          values[k - self.m_r:k + 1])
            drift_vals[k - ia] = self.drift(seg, k)
            diff_vals[k - ia] = self.diffusion(seg, k)
        return np.cumsum(drift_vals * self.h
                         + diff_vals * self.dw[ia:ib, None], axis=0)

    def _init_window(self, values, ia, ib, kind):
        w = ib - ia
        if kind == "constant":
            values[ia + 1:ib + 1] = values[ia]
        elif kind == "linear":
            slope = (values[ia] - values[ia - 1]) / self.h
            values[ia + 1:ib + 1] = (values[ia]
                                     + np.outer(np.arange(1, w + 1) * self.h, slope))
        elif kind == "euler_perturbed":
            for k in range(ia, ib):
                seg = Segment(self.m_r * self.h, self.h,
                              values[k - self.m_r:k + 1])
                values[k + 1] = (values[k] + self.drift(seg, k) * self.h
                                 + self.diffusion(seg, k) * self.dw[k])
            amp = 0.05 * (1.0 + float(np.linalg.norm(values[ia])))
            bump = amp * np.sin(math.pi * np.arange(1, w + 1) / w)
            values[ia + 1:ib + 1] += bump[:, None]
        else:
            raise DomainError(f"unknown init kind {kind!r}; one of {_INIT_KINDS}")

    def run_window(self, values, ia, ib, init_kind, ball_radius, depth=0):
        """Iterate F on nodes (ia, ib]; returns a list of WindowRecords."""
        self._init_window(values, ia, ib, init_kind)
        residuals = []
        ratios = []
        max_norm = 0.0
        converged = False
        for it in range(1, self.max_iters + 1):
            new_slice = values[ia] + self._eval_sums(values, ia, ib)
            diff = new_slice - values[ia + 1:ib + 1]
            res = _zero_history_norm(diff, self.h, self.exponent)
            values[ia + 1:ib + 1] = new_slice
            if it == 1 and self.first_iter_sink is not None:
                self.first_iter_sink[ia + 1:ib + 1] = new_slice
            if residuals and residuals[-1] > 100.0 * self.tol and res > 0:
                ratios.append(res / residuals[-1])
            residuals.append(res)
            max_norm = max(max_norm, _holder_norm_nodes(
                values, self.h, self.exponent, ia - self.m_r, ib))
            if res <= self.stop_tol:
                converged = True
                break
            if len(residuals) >= 3 and res <= self.tol \
                    and res >= 0.9 * residuals[-2]:
                converged = True      # met tol but hit the rounding floor
                break
        if not converged and residuals[-1] > self.tol:
            if depth == 0 and ib - ia >= 2:
                # grid snapping can leave a window a hair too long; one
                # bisection restores the contraction, then give up
                mid = (ia + ib) // 2
                rec1 = self.run_window(values, ia, mid, init_kind,
                                       ball_radius, depth=1)
                rec2 = self.run_window(values, mid, ib, init_kind,
                                       ball_radius, depth=1)
                return [replace(r, split=True) for r in rec1 + rec2]
            raise ConvergenceError(
                f"Picard did not reach tol={self.tol} on window nodes "
                f"[{ia}, {ib}] (best residual {min(residuals):.3e})",
                residual_history=residuals)
        t0 = -self.m_r * self.h
        return [WindowRecord(t_start=t0 + ia * self.h, t_end=t0 + ib * self.h,
                             iterations=len(residuals), residual=residuals[-1],
                             ball_radius=ball_radius, max_iterate_norm=max_norm,
                             contraction_ratios=tuple(ratios))]


def _validate_solve_inputs(coeffs, eta, omega, config):
    if eta.dim != coeffs.dim:
        raise DomainError(f"eta dim {eta.dim} != coefficient dim {coeffs.dim}")
    if abs(eta.delay - config.r) > 1e-12 * max(1.0, config.r):
        raise DomainError(f"eta delay {eta.delay!r} != config r {config.r!r}")
    if abs(eta.mesh - config.mesh) > 1e-12 * config.mesh:
        raise DomainError("eta mesh != config mesh")
    if abs(omega.mesh - config.mesh) > 1e-12 * config.mesh:
        raise DomainError("driver mesh != config mesh")
    if omega.dim != 1:
        raise DomainError("driver must be scalar")
    omega.index_of(0.0, "origin")
    if omega.t_end < config.T - 1e-12:
        raise DomainError("driver does not cover [0, T]")


def map_F(x, coeffs, omega, window, history):
    """One application of the integral map on the window.

    ``x`` must cover ``[t_a - r, t_b]`` and agree with ``history`` on
    ``[t_a - r, t_a]``; the result is unchanged there and equals
    ``x(t_a) + int f + int g domega`` (left sums) past ``t_a``.
    """
    ta, tb = window
    m_r = _snap_index(history.delay, x.mesh, "delay")
    ia, ib = x.index_of(ta, "window start"), x.index_of(tb, "window end")
    if ia - m_r < 0:
        raise DomainError("path does not cover the history of the window")
    if not np.array_equal(x.values[ia - m_r:ia + 1], history.values):
        raise DomainError("path disagrees with history on [t_a - r, t_a]")
    j0 = omega.index_of(ta, "window start")
    dw = np.zeros(x.values.shape[0])
    dw[ia:ib] = np.diff(omega.values[j0:j0 + (ib - ia) + 1, 0])
    values = np.array(x.values)
    drift_vals = np.empty((ib - ia, x.dim))
    diff_vals = np.empty((ib - ia, x.dim))
    for k in range(ia, ib):
        seg = Segment(history.delay, x.mesh, values[k - m_r:k + 1])
        drift_vals[k - ia] = coeffs.f(seg)
        diff_vals[k - ia] = coeffs.g(seg)
    values[ia + 1:ib + 1] = values[ia] + np.cumsum(
        drift_vals * x.mesh + diff_vals * dw[ia:ib, None], axis=0)
    return GridPath(x.t0, x.mesh, values)


def picard_solve(coeffs, eta, omega, config, init="constant",
                 collect_first_iterate=False):
    """Solve the delay equation by windowed Picard iteration.

    Returns a :class:`SolveReport`; the solution equals ``eta`` exactly on
    ``[-r, 0]`` and satisfies the per-window fixed-point residual bound.
    """
    t_start = time.perf_counter()
    _validate_solve_inputs(coeffs, eta, omega, config)
    if coeffs.is_zero():
        partition = trivial_partition(config)
    else:
        constants = compute_contraction_constants(coeffs, config)
        partition = greedy_partition(omega, config, constants.C)

    m_r, n = config.n_history, config.n_history + config.n_horizon
    h = config.mesh
    values = np.zeros((n + 1, coeffs.dim))
    values[:m_r + 1] = eta.values
    j0 = omega.index_of(0.0)
    dw = np.zeros(n + 1)
    dw[m_r:n] = np.diff(omega.values[j0:j0 + config.n_horizon + 1, 0])

    engine = _WindowedPicard(
        drift=lambda seg, k: coeffs.f(seg),
        diffusion=lambda seg, k: coeffs.g(seg),
        dim=coeffs.dim, m_r=m_r, h=h, exponent=config.beta,
        tol=config.picard_tol, max_iters=config.picard_max_iters,
        dw_global=dw)
    first_iter = np.array(values) if collect_first_iterate else None
    engine.first_iter_sink = first_iter

    records = []
    ball_ok = True
    mu = config.mu
    for (ta, tb) in partition.windows():
        ia, ib = m_r + omega.index_of(ta), m_r + omega.index_of(tb)
        hist_norm = _holder_norm_nodes(values, h, config.beta, ia - m_r, ia)
        radius = (hist_norm + mu) / (1.0 - mu)
        recs = engine.run_window(values, ia, ib, init, radius)
        for rec in recs:
            if rec.max_iterate_norm > radius * (1.0 + 1e-9):
                ball_ok = False
        records.extend(recs)

    solution = GridPath(-config.r, h, values)
    nu_semi = holder_seminorm(solution, config.nu, (0.0, config.T)).seminorm
    return SolveReport(
        solution=solution, partition=partition, windows=tuple(records),
        config=config, eta_norm=segment_norm(eta, config.beta),
        ball_ok=ball_ok, nu_seminorm=nu_semi,
        first_iterate=GridPath(-config.r, h, first_iter)
        if first_iter is not None else None,
        wall_time=time.perf_counter() - t_start)


def euler_solve(coeffs, eta, omega, config):
    """One-pass explicit scheme ``x_{k+1} = x_k + f(x_{t_k}) h + g(x_{t_k}) dw_k``.

    Independent cross-check oracle for :func:`picard_solve`; the discrete
    Picard fixed point satisfies the same recursion.
    """
    _validate_solve_inputs(coeffs, eta, omega, config)
    m_r, n = config.n_history, config.n_history + config.n_horizon
    h = config.mesh
    values = np.zeros((n + 1, coeffs.dim))
    values[:m_r + 1] = eta.values
    j0 = omega.index_of(0.0)
    dw = np.diff(omega.values[j0:j0 + config.n_horizon + 1, 0])
    for k in range(m_r, n):
        seg = Segment(config.r, h, values[k - m_r:k + 1])
        values[k + 1] = (values[k] + coeffs.f(seg) * h
                         + coeffs.g(seg) * dw[k - m_r])
    return GridPath(-config.r, h, values)


@dataclass(frozen=True)
class ProbeReport:
    """Pairwise distances between solves started from distinct iterates."""

    init_kinds: tuple
    max_pairwise: float
    tolerance: float
    passed: bool


def uniqueness_probe(coeffs, eta, omega, config, n_inits=3):
    """Re-solve from distinct initial iterates; all runs must agree within
    ``10 * picard_tol`` in the grid Holder norm."""
    if not 2 <= n_inits <= len(_INIT_KINDS):
        raise DomainError(f"n_inits must be in [2, {len(_INIT_KINDS)}]")
    kinds = _INIT_KINDS[:n_inits]
    solutions = [picard_solve(coeffs, eta, omega, config, init=k).solution
                 for k in kinds]
    worst = 0.0
    for i in range(len(solutions)):
        for j in range(i + 1, len(solutions)):
            diff = GridPath(solutions[i].t0, solutions[i].mesh,
                            solutions[i].values - solutions[j].values)
            worst = max(worst, holder_norm(diff, config.beta))
    tol = 10.0 * config.picard_tol
    return ProbeReport(init_kinds=kinds, max_pairwise=worst,
                       tolerance=tol, passed=worst <= tol)


# ---------------------------------------------------------------------------
# Bound checkers.

def _log_margin(rhs, lhs):
    if lhs <= 0.0:
        return math.inf
    if rhs <= 0.0:
        return -math.inf
    return math.log(rhs) - math.log(lhs)


@dataclass(frozen=True)
class GrowthReport:
    """Per-window margins of the segment-norm growth estimate."""

    rows: tuple               # (t_i, t_{i+1}, N, min log-margin)
    min_margin: float         # min over grid t of log(rhs) - log(lhs)
    passed: bool


def growth_bound_check(report, eta):
    """Check ``|x_t| <= (1-mu)^-(N(t)+1) (|eta| + 1)`` at every grid t.

    Norms are the grid segment norms (sup plus beta-seminorm on [-r, 0]);
    N(t) counts the solver's stopping times in (0, t].
    """
    config = report.config
    ts, profile = segment_norm_profile(report.solution, config.beta, config.r,
                                       (0.0, config.T))
    n_of_t = report.partition.n_profile(ts)
    eta_norm = segment_norm(eta, config.beta)
    log_factor = -math.log(1.0 - config.mu)
    rhs = np.exp((n_of_t + 1) * log_factor) * (eta_norm + 1.0)
    margins = np.log(rhs) - np.log(np.maximum(profile, 1e-300))
    passed = bool(np.all(profile <= rhs * (1.0 + 1e-12)))
    rows = []
    for i, (ta, tb) in enumerate(report.partition.windows()):
        sel = (ts >= ta - 1e-12) & (ts <= tb + 1e-12)
        if np.any(sel):
            rows.append((float(ta), float(tb), int(report.partition.n_at(ta)),
                         float(margins[sel].min())))
    return GrowthReport(rows=tuple(rows), min_margin=float(margins.min()),
                        passed=passed)


@dataclass(frozen=True)
class GronwallReport:
    """Outcome of the Gronwall-type estimate check on a candidate path."""

    hypothesis_ok: bool
    hypothesis_worst_ratio: float
    conclusion_ok: bool | None
    conclusion_min_margin: float | None
    message: str


def gronwall_check(z, A, C, omega, config, n_window_samples=50, seed=0):
    """Verify the Gronwall-type estimate for a path z on [-r, T].

    First samples grid windows to test the hypothesis
    ``|||z|||_beta <= A + C ((t-s)^(1-b) + (t-s)^(n-b) |||omega|||) |z|``;
    where it holds, asserts the conclusion
    ``|z_t| <= (1-2mu)^-(N(t)+1) (A / mu + |z_0|)`` with N from the greedy
    partition at this (C, mu).
    """
    if A < 0 or C <= 0:
        raise DomainError("need A >= 0 and C > 0")
    if not config.mu < min(0.5, C):
        raise DomainError(f"need mu < min(1/2, C), got {config.mu!r}")
    n_T = z.index_of(config.T)
    i_origin = z.index_of(0.0)
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    worst = 0.0
    for _ in range(n_window_samples):
        i = int(rng.integers(i_origin, n_T))
        j = int(rng.integers(i + 1, n_T + 1))
        s, t = z.t0 + i * z.mesh, z.t0 + j * z.mesh
        lhs = holder_seminorm(z, config.beta, (s, t)).seminorm
        rhs = A + C * window_residual(omega, config.beta, config.nu, s, t) \
            * holder_norm(z, config.beta, (s - config.r, t))
        if lhs > 0:
            worst = max(worst, lhs / rhs if rhs > 0 else math.inf)
    if worst > 1.0 + 1e-9:
        return GronwallReport(hypothesis_ok=False, hypothesis_worst_ratio=worst,
                              conclusion_ok=None, conclusion_min_margin=None,
                              message="hypothesis not satisfied on sampled windows")
    partition = greedy_partition(omega, config, C)
    ts, profile = segment_norm_profile(z, config.beta, config.r, (0.0, config.T))
    z0 = segment_norm(segment(z, 0.0, config.r), config.beta)
    log_factor = -math.log(1.0 - 2.0 * config.mu)
    rhs = np.exp((partition.n_profile(ts) + 1) * log_factor) * (A / config.mu + z0)
    scale = max(z0, A / config.mu, 1e-300)
    ok = bool(np.all(profile <= rhs + 1e-12 * scale))
    margins = np.log(np.maximum(rhs, 1e-300)) - np.log(np.maximum(profile, 1e-300))
    return GronwallReport(hypothesis_ok=True, hypothesis_worst_ratio=worst,
                          conclusion_ok=ok,
                          conclusion_min_margin=float(margins.min()),
                          message="ok" if ok else "conclusion violated")
