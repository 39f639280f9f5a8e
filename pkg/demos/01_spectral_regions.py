"""
Parabolic spectral regions
==========================

The L^p spectrum of the Hodge Laplacian on k-forms of H^{N+1} is a
parabolic region.  This script walks through its geometry, the closed-form
membership test and the duality symmetries.
"""

import math

import numpy as np

from hyperlp import regions as rg
from hyperlp.regions import RegionSpec

# Region of functions on H^4 (N = 3) for p = 1: the widest parabola,
# whose boundary passes through the origin.
spec = RegionSpec(3, 0, 1.0)
g = spec.geometry
print(f"vertex v = {g.vertex_v}, half-width d = {g.half_width_d}")
for s in (0.0, 1.0, 2.0):
    print(f"  boundary at s={s}: {rg.boundary_point(spec, s):.4f}")

# Membership is an O(1) test: x >= v - d^2 + y^2 / (4 d^2).
for lam in (0.0, 1.0, -0.5, 2 - 1j, 1 - 3j):
    print(f"  {lam!s:>8}: closed={rg.contains(spec, lam)}, interior={rg.contains(spec, lam, 'interior')}")

# p and its dual exponent give the same region, as do degrees k and N+1-k.
rng = np.random.default_rng(0)
pts = rng.uniform(-4, 8, 200) + 1j * rng.uniform(-6, 6, 200)
same_dual = all(rg.contains(RegionSpec(3, 1, 4 / 3), z) == rg.contains(RegionSpec(3, 1, 4.0), z) for z in pts)
same_degree = all(rg.contains(RegionSpec(3, 1, 1.5), z) == rg.contains(RegionSpec(3, 3, 1.5), z) for z in pts)
print(f"duality in p: {same_dual}, duality in k: {same_degree}")

# At p = 2 the parabola degenerates to a ray.  In the middle degree of odd N
# the point 0 joins the spectrum as an isolated point.
mid = RegionSpec(3, 2, 2.0)
print(f"middle degree, p=2: 0 in spectrum {rg.spectrum_contains(mid, 0.0)}, 0.1 in spectrum {rg.spectrum_contains(mid, 0.1)}")
lo, hi = rg.zero_exclusion_window(3)
print(f"0 lies outside the middle-degree region for {lo} < p < {hi}")

# For p > 2 the interior consists of L^p eigenvalues.
print("eigenvalue at the L^2 vertex for p=4:", rg.is_lp_eigenvalue(RegionSpec(3, 1, 4.0), 0.25))
print("p = inf half-width:", RegionSpec(3, 1, math.inf).geometry.half_width_d)
