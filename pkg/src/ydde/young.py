"""Young (Riemann-Stieltjes) quadrature of Holder paths against Holder drivers.

Left-point sums over grid nodes, matching the solver's explicit stepping.
The certificate :func:`young_loeve_gap` compares each integral against its
one-increment approximation and bounds the difference by
``K (t-s)^(beta+nu) |||omega|||_nu |||x|||_beta`` with grid seminorms on
both sides, where ``K = 1 / (1 - 2^(1 - (beta+nu)))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .paths import holder_seminorm

MAX_MESH_MISMATCH = 1e-9


def young_constant(beta, nu):
    """K = 1 / (1 - 2^(1 - (beta+nu))); finite exactly when beta + nu > 1."""
    theta = beta + nu
    if theta <= 1.0:
        raise DomainError(f"Young condition violated: beta + nu = {theta!r} <= 1")
    return 1.0 / (1.0 - 2.0 ** (1.0 - theta))


@dataclass(frozen=True)
class YoungConstants:
    """Exponents (beta, nu, delta) with the constants K and K' they induce."""

    beta: float
    nu: float
    delta: float = 1.0
    K: float = None
    Kprime: float = None

    def __post_init__(self):
        if not 0.0 < self.beta <= 1.0 or not 0.0 < self.nu <= 1.0:
            raise DomainError("exponents must lie in (0, 1]")
        if not 0.0 < self.delta <= 1.0:
            raise DomainError("delta must lie in (0, 1]")
        object.__setattr__(self, "K", young_constant(self.beta, self.nu))
        object.__setattr__(self, "Kprime",
                           young_constant(self.delta * self.beta, self.nu))


def _check_alignment(x, omega, window):
    if abs(x.mesh - omega.mesh) > MAX_MESH_MISMATCH * max(x.mesh, omega.mesh):
        raise DomainError(f"integrand mesh {x.mesh!r} != driver mesh {omega.mesh!r}")
    if omega.dim != 1:
        raise DomainError("driver must be scalar")
    ia, ib = x.window_indices(window)
    ja, jb = omega.window_indices(window)
    return ia, ib, ja, jb


def young_integral(x, omega, window=None):
    """Left-point sum of x against the driver increments over the window."""
    ia, ib, ja, jb = _check_alignment(x, omega, window)
    dw = np.diff(omega.values[ja:jb + 1, 0])
    return x.values[ia:ib].T @ dw


def young_integral_cumulative(x, omega, window=None):
    """Running left-point sums at every node of the window (starts at zero)."""
    ia, ib, ja, jb = _check_alignment(x, omega, window)
    dw = np.diff(omega.values[ja:jb + 1, 0])
    out = np.zeros((ib - ia + 1, x.dim))
    np.cumsum(x.values[ia:ib] * dw[:, None], axis=0, out=out[1:])
    return out


class GapReport(NamedTuple):
    gap: float
    bound: float


def young_loeve_gap(x, omega, window, consts, refine=1):
    """Certificate ``|integral - x(s)(omega(t)-omega(s))| <= K (t-s)^(b+n) ...``.

    ``refine > 1`` evaluates the quadrature on a piecewise-linear
    interpolation at mesh/refine (the refined-quadrature oracle); the bound
    always uses the native grid seminorms of both paths on the window.
    """
    a, b = window
    ia, ib, ja, jb = _check_alignment(x, omega, window)
    if refine > 1:
        xr = x.restrict(a, b).refine_linear(refine)
        wr = omega.restrict(a, b).refine_linear(refine)
        integral = young_integral(xr, wr)
    else:
        integral = young_integral(x, omega, window)
    increment = x.values[ia] * (omega.values[jb, 0] - omega.values[ja, 0])
    gap = float(np.linalg.norm(integral - increment))
    span = b - a
    bound = (consts.K * span ** (consts.beta + consts.nu)
             * holder_seminorm(omega, consts.nu, window).seminorm
             * holder_seminorm(x, consts.beta, window).seminorm)
    return GapReport(gap, float(bound))


def young_bound(x, omega, window, consts):
    """Right side of the displayed integral bound:
    ``(t-s)^nu |||omega|||_nu (|x(s)| + K (t-s)^beta |||x|||_beta)``.
    """
    a, b = window
    ia, _, _, _ = _check_alignment(x, omega, window)
    span = b - a
    om = holder_seminorm(omega, consts.nu, window).seminorm
    xs = float(np.linalg.norm(x.values[ia]))
    xb = holder_seminorm(x, consts.beta, window).seminorm
    return span ** consts.nu * om * (xs + consts.K * span ** consts.beta * xb)


@dataclass(frozen=True)
class SweepReport:
    """Certificate sweep outcome over random windows."""

    n_windows: int
    violations: int
    worst_ratio: float        # max gap / bound over windows with bound > 0
    rows: tuple = ()          # (integrand index, s, t, gap, bound) per window


def certificate_sweep(integrands, omega, span, consts, n_windows, seed=0,
                      min_cells=2):
    """Check gap <= bound on random windows for each integrand path.

    ``span = (lo, hi)`` restricts windows to that range of the shared grid.
    Windows shorter than ``min_cells`` mesh cells are not drawn.  The
    comparison carries an absolute floor at the rounding error of the
    left-point sum, so a constant integrand (bound exactly zero) does not
    trip on float summation noise.
    """
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    lo, hi = span
    ilo = omega.index_of(lo, "span start")
    ihi = omega.index_of(hi, "span end")
    if ihi - ilo < min_cells:
        raise DomainError("sweep span shorter than min_cells")
    worst = 0.0
    violations = 0
    rows = []
    for idx, x in enumerate(integrands):
        ix0 = x.index_of(omega.t0 + ilo * omega.mesh)
        for _ in range(n_windows):
            i = int(rng.integers(ilo, ihi - min_cells + 1))
            j = int(rng.integers(i + min_cells, ihi + 1))
            window = (omega.t0 + i * omega.mesh, omega.t0 + j * omega.mesh)
            gap, bound = young_loeve_gap(x, omega, window, consts)
            sup_x = float(np.abs(x.values[ix0 + i - ilo:ix0 + j - ilo + 1]).max())
            sum_dw = float(np.abs(np.diff(omega.values[i:j + 1, 0])).sum())
            atol = 1e-13 * (1.0 + sup_x * sum_dw)
            rows.append((idx, window[0], window[1], gap, bound))
            if gap > bound * (1.0 + 1e-9) + atol:
                violations += 1
            if bound > atol:
                worst = max(worst, gap / bound)
    return SweepReport(n_windows=len(rows), violations=violations,
                       worst_ratio=worst, rows=tuple(rows))
