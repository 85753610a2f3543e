import numpy as np
import pytest

from ydde.coefficients import make_builtin
from ydde.drivers import DriverSpec, gen_driver, gen_fbm
from ydde.paths import GridPath, Segment
from ydde.solver import SolverConfig

MESH = 1.0 / 256


def rng(seed):
    return np.random.Generator(np.random.Philox(key=seed))


def random_path(seed, n=64, mesh=1.0 / 64, t0=0.0, dim=1, roughness=1.0):
    """Random test path: a smooth Fourier mix plus a scaled random walk."""
    g = rng(seed)
    t = np.linspace(0.0, 1.0, n + 1)
    vals = np.zeros((n + 1, dim))
    for j in range(dim):
        coef = g.standard_normal(4)
        vals[:, j] = (coef[0] * np.sin(np.pi * t) + coef[1] * np.cos(2 * np.pi * t)
                      + coef[2] * t + 0.3 * coef[3])
        walk = np.concatenate(([0.0], np.cumsum(g.standard_normal(n))))
        vals[:, j] += roughness * np.sqrt(mesh) * walk
    return GridPath(t0, mesh, vals)


@pytest.fixture(scope="session")
def workhorse():
    """sin_delay + fBm(H=0.75) scenario used across solver-level tests."""
    config = SolverConfig(beta=0.55, nu=0.7, mesh=MESH, T=1.0, r=0.25)
    coeffs = make_builtin("sin_delay", A=-0.15, B=0.1, sigma=0.05)
    spec = DriverSpec(kind="fbm", T=1.0, mesh=MESH, hurst=0.75, seed=7,
                      amplitude=0.05)
    omega = gen_fbm(spec)
    u = np.linspace(-0.25, 0.0, config.n_history + 1)
    eta = Segment(0.25, MESH, (1.0 + 0.2 * u)[:, None])
    direction = Segment(0.25, MESH, (0.5 * np.cos(2 * np.pi * u))[:, None])
    return dict(config=config, coeffs=coeffs, spec=spec, omega=omega,
                eta=eta, direction=direction)


@pytest.fixture(scope="session")
def linear_scenario():
    config = SolverConfig(beta=0.55, nu=0.7, mesh=MESH, T=1.0, r=0.25)
    coeffs = make_builtin("linear_delay", A=-0.15, B=0.05, Sigma=0.05, c=0.02)
    spec = DriverSpec(kind="fbm", T=1.0, mesh=MESH, hurst=0.75, seed=11,
                      amplitude=0.05)
    omega = gen_fbm(spec)
    u = np.linspace(-0.25, 0.0, config.n_history + 1)
    eta = Segment(0.25, MESH, (1.0 + 0.2 * u)[:, None])
    direction = Segment(0.25, MESH, (0.5 * np.cos(2 * np.pi * u))[:, None])
    return dict(config=config, coeffs=coeffs, spec=spec, omega=omega,
                eta=eta, direction=direction)


@pytest.fixture(scope="session")
def zero_driver():
    return gen_driver(DriverSpec(kind="zero", T=1.0, mesh=MESH))
