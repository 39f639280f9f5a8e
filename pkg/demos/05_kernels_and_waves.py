"""
Heat kernels, volume growth and waves
=====================================

H^3 has a closed-form heat kernel.  It supports exact mass identities for
heat and resolvent kernels and a Gaussian upper bound.  Volume growth and
finite propagation speed are checked for general dimension.
"""

import numpy as np

from hyperlp import kernels as kn

for t in (0.1, 1.0, 10.0):
    print(f"heat mass at t={t}: {kn.heat_mass(t):.12f}")

for m, xi in ((0.5, 1.0), (1.0, 2.0), (2.0, 4.0)):
    print(f"resolvent mass m={m}, xi={xi}: {kn.resolvent_mass(m, xi):.10f} vs {xi ** (-2 * m):.10f}")

rep = kn.gaussian_bound_check()
print(f"smallest feasible C2 = {rep.measured}, C1 = {rep.details['C1']:.4f}")

# log vol(B_R)/R approaches N only like N + O(1/R); the entropy slope is sharp.
for N in (1, 2, 3, 5):
    rate = kn.log_ball_volume(N, 40.0) / 40.0
    print(f"N={N}: log vol(B_40)/40 = {rate:.4f}, slope on [20, 40] = {kn.volume_entropy_slope(N):.6f}")

# A radial wave keeps its energy inside the light cone up to discretisation error.
rep = kn.wave_cone_check(h=2e-3, refinements=1)
print("outside-cone energy fractions:", np.array(rep.details["fractions"]))

print(kn.taylor_remainder_check().line())
print(kn.fourier_decay_check().line())
print(kn.symbol_decay_check().line())
