"""
Radial eigenforms and their growth
==================================

Separating variables in geodesic polar coordinates reduces the eigenvalue
problem to a radial ODE with a regular singular point at r = 0.  Its
regular solution grows like exp((-m + a) r) where a + ib = sqrt(m^2 - Lambda).
"""

import numpy as np

from hyperlp import radial as rd
from hyperlp.regions import RegionSpec, contains

N, k = 3, 1
lam = rd.sphere_eigenvalue(N, k, 0)
fro = rd.frobenius_index(N, k, lam)
print(f"sphere eigenvalue {lam}, Frobenius index alpha = {fro.alpha}")

for Lam in (0.25, 0.0, -1.0, 2 - 3j):
    prob = rd.RadialProblem(N, k, lam, Lam)
    g = rd.measure_growth(prob)
    print(f"Lambda={Lam!s:>8}: fitted slope {g.fitted_slope:+.4f}, predicted {rd.predicted_slope(prob):+.4f}")

# The profile carries its renormalisations in log_scale.
prof = rd.integrate(rd.RadialProblem(N, k, lam, -30.0), R=60.0)
print(f"log|phi(60)| = {prof.log_abs()[-1]:.2f} (renormalised {np.count_nonzero(np.diff(prof.log_scale))} times)")

# L^p integrability of the radial eigenform matches the interior of the region for p > 2.
rng = np.random.default_rng(1)
agree = 0
for Lam in rng.uniform(-3, 5, 100) + 1j * rng.uniform(-4, 4, 100):
    agree += rd.is_lp_integrable(Lam, 4.0, N, k) == contains(RegionSpec(N, k, 4.0), Lam, "interior")
print(f"integrability vs interior of Q_4: {agree}/100 agree")
