"""Coefficient functionals f, g on delay segments, with regularity metadata.

A :class:`CoefficientSet` bundles the drift f and diffusion g (maps from a
segment to R^d), their directional derivatives, and the constants used by
the solver: the Lipschitz bound ``L_f`` of f, the derivative bound ``L_g``
of g, and the local Holder modulus ``L_M`` of Dg with exponent ``delta``.
The built-in families realize these hypotheses in closed form, including
one family with a nonconstant Dg.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .paths import (GridPath, Segment, _snap_index, holder_norm,
                    holder_seminorm, sup_norm)

_FAMILIES = ("linear_delay", "sin_delay", "scalar_logistic_bounded")


@dataclass(frozen=True)
class CoefficientSet:
    """f, g and their directional derivatives plus regularity constants."""

    f: Callable
    g: Callable
    Df: Callable            # Df(segment, direction) -> R^d
    Dg: Callable
    L_f: float
    L_g: float
    L_M: Callable           # ball radius M -> Holder modulus of Dg
    delta: float
    f0_norm: float
    g0_norm: float
    dim: int
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.L_f < 0 or self.L_g < 0:
            raise DomainError("Lipschitz constants must be nonnegative")
        if not 0.0 < self.delta <= 1.0:
            raise DomainError("delta must lie in (0, 1]")

    @property
    def Lprime(self):
        """max(L_f, |f(0)|): the drift growth constant."""
        return max(self.L_f, self.f0_norm)

    def is_zero(self):
        return (self.L_f == 0 and self.L_g == 0
                and self.f0_norm == 0 and self.g0_norm == 0)


def _as_matrix(value, dim, name):
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return float(arr) * np.eye(dim)
    if arr.shape != (dim, dim):
        raise DomainError(f"{name} must be scalar or a ({dim}, {dim}) matrix")
    return arr


def _as_vector(value, dim, name):
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        return np.full(dim, float(arr))
    if arr.shape != (dim,):
        raise DomainError(f"{name} must be scalar or a length-{dim} vector")
    return arr


def _opnorm(mat):
    return float(np.linalg.norm(mat, 2))


def make_builtin(family, **params):
    """Instantiate one of the built-in coefficient families.

    linear_delay:             f(s) = A s(0) + B s(-r),  g(s) = Sigma s(-r) + c
    sin_delay:                same drift, g(s) = sigma sin(s(-r)) componentwise
    scalar_logistic_bounded:  d=1, f(s) = a s(0) (1 - tanh(s(-r))),
                              g(s) = sigma sin(s(-r)) + c; the reported L_f
                              holds on the ball |s|_inf <= domain_bound.
    """
    if family == "linear_delay":
        dim = int(params.pop("dim", 1))
        A = _as_matrix(params.pop("A", 0.0), dim, "A")
        B = _as_matrix(params.pop("B", 0.0), dim, "B")
        Sigma = _as_matrix(params.pop("Sigma", 0.0), dim, "Sigma")
        c = _as_vector(params.pop("c", 0.0), dim, "c")
        delta = float(params.pop("delta", 1.0))
        if params:
            raise DomainError(f"unknown linear_delay params {sorted(params)}")

        def f(seg):
            return A @ seg.values[-1] + B @ seg.values[0]

        def g(seg):
            return Sigma @ seg.values[0] + c

        def Df(seg, direction):
            return A @ direction.values[-1] + B @ direction.values[0]

        def Dg(seg, direction):
            return Sigma @ direction.values[0]

        return CoefficientSet(
            f=f, g=g, Df=Df, Dg=Dg,
            L_f=_opnorm(A) + _opnorm(B), L_g=_opnorm(Sigma),
            L_M=lambda M: 0.0, delta=delta,
            f0_norm=0.0, g0_norm=float(np.linalg.norm(c)), dim=dim,
            family=family,
            params={"A": A.tolist(), "B": B.tolist(), "Sigma": Sigma.tolist(),
                    "c": c.tolist(), "delta": delta},
        )

    if family == "sin_delay":
        dim = int(params.pop("dim", 1))
        A = _as_matrix(params.pop("A", 0.0), dim, "A")
        B = _as_matrix(params.pop("B", 0.0), dim, "B")
        sigma = float(params.pop("sigma", 1.0))
        if params:
            raise DomainError(f"unknown sin_delay params {sorted(params)}")

        def f(seg):
            return A @ seg.values[-1] + B @ seg.values[0]

        def g(seg):
            return sigma * np.sin(seg.values[0])

        def Df(seg, direction):
            return A @ direction.values[-1] + B @ direction.values[0]

        def Dg(seg, direction):
            return sigma * np.cos(seg.values[0]) * direction.values[0]

        return CoefficientSet(
            f=f, g=g, Df=Df, Dg=Dg,
            L_f=_opnorm(A) + _opnorm(B), L_g=abs(sigma),
            L_M=lambda M: abs(sigma), delta=1.0,
            f0_norm=0.0, g0_norm=0.0, dim=dim,
            family=family,
            params={"A": A.tolist(), "B": B.tolist(), "sigma": sigma},
        )

    if family == "scalar_logistic_bounded":
        a = float(params.pop("a", -0.05))
        sigma = float(params.pop("sigma", 0.05))
        c = float(params.pop("c", 0.0))
        domain_bound = float(params.pop("domain_bound", 3.0))
        if params:
            raise DomainError(f"unknown scalar_logistic params {sorted(params)}")
        if domain_bound <= 0:
            raise DomainError("domain_bound must be positive")

        def f(seg):
            u, v = seg.values[-1], seg.values[0]
            return a * u * (1.0 - np.tanh(v))

        def g(seg):
            return sigma * np.sin(seg.values[0]) + c

        def Df(seg, direction):
            u, v = seg.values[-1], seg.values[0]
            du, dv = direction.values[-1], direction.values[0]
            sech2 = 1.0 / np.cosh(v) ** 2
            return a * (du * (1.0 - np.tanh(v)) - u * sech2 * dv)

        def Dg(seg, direction):
            return sigma * np.cos(seg.values[0]) * direction.values[0]

        # |df/du| <= 2|a| and |df/dv| <= |a| M on the stated ball.
        return CoefficientSet(
            f=f, g=g, Df=Df, Dg=Dg,
            L_f=abs(a) * (2.0 + domain_bound), L_g=abs(sigma),
            L_M=lambda M: abs(sigma), delta=1.0,
            f0_norm=0.0, g0_norm=abs(c), dim=1,
            family=family,
            params={"a": a, "sigma": sigma, "c": c,
                    "domain_bound": domain_bound},
        )

    raise DomainError(f"unknown coefficient family {family!r}; "
                      f"expected one of {_FAMILIES}")


def coefficients_from_json(d):
    d = dict(d)
    family = d.pop("family")
    params = d.pop("params", {})
    if d:
        raise DomainError(f"unknown coefficient keys {sorted(d)}")
    for key in ("A", "B", "Sigma", "c"):
        if key in params and isinstance(params[key], list):
            params[key] = np.asarray(params[key], dtype=float)
    return make_builtin(family, **params)


def zero_segment(r, mesh, dim):
    n = int(round(r / mesh))
    return Segment(r, mesh, np.zeros((n + 1, dim)))


def bounded_segment_sampler(r, mesh, dim, bound):
    """Random segments with sup-norm at most ``bound`` (low-order Fourier mix)."""
    n = int(round(r / mesh))
    u = np.linspace(0.0, 1.0, n + 1)

    def sample(rng):
        vals = np.zeros((n + 1, dim))
        for j in range(dim):
            coef = rng.standard_normal(5)
            vals[:, j] = (coef[0]
                          + coef[1] * np.sin(math.pi * u) + coef[2] * np.cos(math.pi * u)
                          + coef[3] * np.sin(2 * math.pi * u) + coef[4] * u)
        peak = np.abs(vals).max()
        scale = bound * rng.uniform(0.05, 1.0) / max(peak, 1e-12)
        return Segment(r, mesh, scale * vals)

    return sample


def _ratio(num, den):
    if den <= 0.0:
        return 0.0 if num <= 1e-14 else math.inf
    return num / den


@dataclass(frozen=True)
class RegularityReport:
    """Worst observed ratios against the declared regularity constants."""

    f_lipschitz: float
    dg_bound: float
    dg_holder: float
    trials: int
    passed: bool


def verify_regularity(coeffs, sampler, M, trials, seed=0, n_directions=8):
    """Empirical check of the declared constants on sampled segment pairs.

    Ratios are worst observed value / declared bound; anything above
    1 + 1e-9 marks the CoefficientSet invalid.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    worst_f = worst_db = worst_dh = 0.0
    lm = coeffs.L_M(M)
    for _ in range(trials):
        xi, eta = sampler(rng), sampler(rng)
        gap = float(np.abs(xi.values - eta.values).max())
        worst_f = max(worst_f, _ratio(
            float(np.linalg.norm(coeffs.f(xi) - coeffs.f(eta))),
            coeffs.L_f * gap))
        dir_gap = 0.0
        for _ in range(n_directions):
            direction = sampler(rng)
            unit = direction.with_values(
                direction.values / max(np.abs(direction.values).max(), 1e-12))
            worst_db = max(worst_db, _ratio(
                float(np.linalg.norm(coeffs.Dg(xi, unit))), coeffs.L_g))
            dir_gap = max(dir_gap, float(np.linalg.norm(
                coeffs.Dg(xi, unit) - coeffs.Dg(eta, unit))))
        worst_dh = max(worst_dh, _ratio(dir_gap, lm * gap ** coeffs.delta))
    passed = max(worst_f, worst_db, worst_dh) <= 1.0 + 1e-9
    return RegularityReport(worst_f, worst_db, worst_dh, trials, passed)


def composition_path(func, path, r, window=None):
    """The path ``t -> func(x_t)`` on grid nodes of the window."""
    mr = _snap_index(r, path.mesh, "delay")
    if window is None:
        ja, jb = mr, path.n_intervals
    else:
        ja = path.index_of(window[0], "window start")
        jb = path.index_of(window[1], "window end")
    if ja < mr:
        raise DomainError("composition window starts before t0 + r")
    out = np.empty((jb - ja + 1, path.dim))
    for k in range(ja, jb + 1):
        seg = Segment(r, path.mesh, path.values[k - mr:k + 1])
        out[k - ja] = func(seg)
    return GridPath(path.t0 + ja * path.mesh, path.mesh, out)


def composition_holder(coeffs, path, beta, r, window):
    """Grid Holder seminorm of ``t -> g(x_t)``; the Lipschitz composition
    bound keeps it below ``L_g |||x|||_{beta, [a-r, b]}``."""
    comp = composition_path(coeffs.g, path, r, window)
    return holder_seminorm(comp, beta)


@dataclass(frozen=True)
class CompositionGapReport:
    """Both sides of the difference estimate for g-composites."""

    lhs: float          # |||g(x_.) - g(y_.)|||_{delta*beta, [a,b]}
    bound_tight: float
    bound_weak: float
    M: float
    exponent: float


def composition_holder_diff(coeffs, x, y, beta, r, window):
    """Difference estimate in the (delta*beta)-Holder seminorm.

    lhs = |||g(x_.) - g(y_.)|||_{delta beta, [a,b]} against
    ``L_g (b-a)^(beta - delta beta) |||x-y|||_beta + L_M M^delta |x-y|_inf``
    on the enlarged window, with M the larger of the two path norms.
    """
    a, b = window
    if abs(x.mesh - y.mesh) > 1e-12 or abs(x.t0 - y.t0) > 1e-12:
        raise DomainError("paths must share grid for the difference estimate")
    gx = composition_path(coeffs.g, x, r, window)
    gy = composition_path(coeffs.g, y, r, window)
    db = coeffs.delta * beta
    lhs = holder_seminorm(GridPath(gx.t0, gx.mesh, gx.values - gy.values), db).seminorm
    enlarged = (a - r, b)
    M = max(holder_norm(x, beta, enlarged), holder_norm(y, beta, enlarged))
    diff = GridPath(x.t0, x.mesh, x.values - y.values)
    lm = coeffs.L_M(M)
    span = b - a
    tight = (coeffs.L_g * span ** (beta - db)
             * holder_seminorm(diff, beta, enlarged).seminorm
             + lm * M ** coeffs.delta * sup_norm(diff, enlarged))
    weak = ((coeffs.L_g * span ** (beta - db) + lm * M ** coeffs.delta)
            * holder_norm(diff, beta, enlarged))
    return CompositionGapReport(lhs, tight, weak, M, db)
