"""Driver paths: fractional Brownian motion and deterministic test signals.

fBm with Hurst index H > 1/2 is the main stochastic driver.  A sampled
realization is almost surely Holder for every exponent below H, never H
itself, so the solver needs a working exponent nu < H; the empirical
seminorm table shows how the grid seminorm blows up as nu approaches H.
"""

import numpy as np

from ydde import DriverSpec, empirical_holder_exponent, gen_driver

spec = DriverSpec(kind="fbm", T=1.0, mesh=1 / 512, hurst=0.75, seed=42,
                  amplitude=1.0)
omega = gen_driver(spec)
print(f"fBm sample: H={spec.hurst}, {omega.n_intervals} steps, "
      f"omega(0)={omega.values[0, 0]}, omega(1)={omega.values[-1, 0]:+.4f}")

# Reproducibility: the seed fixes the path bit for bit.
again = gen_driver(spec)
print(f"same seed reproduces the path: {np.array_equal(omega.values, again.values)}")

# Sweep candidate Holder exponents. The grid seminorm grows with the
# exponent; pick a nu with a moderate value (default margin: H - 0.05).
print("\n  nu     grid |||omega|||_nu")
for beta, semi in empirical_holder_exponent(omega, [0.55, 0.6, 0.65, 0.7, 0.74]):
    print(f"  {beta:.2f}   {semi:8.4f}")

# Deterministic drivers for oracle tests: power, sine, zero.
power = gen_driver(DriverSpec(kind="power", T=1.0, mesh=1 / 512, exponent=0.75))
print(f"\npower driver t^0.75: grid 0.75-seminorm = "
      f"{empirical_holder_exponent(power, [0.75])[0][1]:.6f} (attained at 0)")

sine = gen_driver(DriverSpec(kind="sine", T=1.0, mesh=1 / 512, amplitude=1.0,
                             frequency=1.0))
print(f"sine driver at t=0.25: {sine.value_at(0.25)[0]:.6f}")
