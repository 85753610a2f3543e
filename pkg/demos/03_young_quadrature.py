"""Young integrals by left-point sums, with their quadrature certificate.

When the integrand is beta-Holder and the driver nu-Holder with
beta + nu > 1, the one-increment approximation x(s)(omega(t) - omega(s))
is off by at most K (t-s)^(beta+nu) |||omega|||_nu |||x|||_beta with
K = 1/(1 - 2^(1-(beta+nu))).  The same telescoping gives first-order
consistency of the left sums under mesh refinement.
"""

from ydde import (DriverSpec, YoungConstants, gen_driver, young_constant,
                  young_integral, young_loeve_gap)

# The constant blows up as beta + nu approaches 1 from above.
print("K(beta + nu):")
for theta in (2.0, 1.5, 1.25, 1.1, 1.01):
    print(f"  beta + nu = {theta:5.2f} : K = {young_constant(theta / 2, theta / 2):9.3f}")

# Self-integral of a smooth driver: int omega domega has the closed form
# (omega(T)^2 - omega(0)^2)/2, approached at first order in the mesh.
fine = gen_driver(DriverSpec(kind="sine", T=1.0, mesh=1 / 1024, amplitude=1.0,
                             frequency=0.1))
target = 0.5 * (fine.values[-1, 0] ** 2 - fine.values[0, 0] ** 2)
print(f"\nint omega domega, target {target:.8f}")
print("  mesh        left sum      rel. error")
for factor in (8, 4, 2, 1):
    om = fine.subsample(factor)
    val = young_integral(om, om)[0]
    print(f"  1/{round(1 / om.mesh):<9d} {val:.8f}  {abs(val - target) / target:.3e}")

# The Young-Loeve certificate on an fBm driver: gap <= bound on any window.
omega = gen_driver(DriverSpec(kind="fbm", T=1.0, mesh=1 / 512, hurst=0.75,
                              seed=3, amplitude=0.5))
x = gen_driver(DriverSpec(kind="power", T=1.0, mesh=1 / 512, exponent=0.75))
consts = YoungConstants(beta=0.55, nu=0.7)
print("\nYoung-Loeve certificate (integrand t^0.75 against fBm):")
print("  window            gap          bound       ratio")
for window in ((0.0, 0.25), (0.25, 0.5), (0.125, 0.875)):
    gap, bound = young_loeve_gap(x, omega, window, consts)
    print(f"  [{window[0]:.3f},{window[1]:.3f}]   {gap:.3e}   {bound:.3e}   "
          f"{gap / bound:.4f}")
