"""
Approximate eigenforms on the boundary parabola
===============================================

Forms ``y^mu dx^J`` are exact formal eigenforms of the Hodge Laplacian in the
upper half-space.  Cutting them off with plateau profiles gives a sequence
whose residual quotient decays like 1/n, which places the boundary of the
parabola in the spectrum.
"""

import numpy as np

from hyperlp import halfspace as hs
from hyperlp.regions import RegionSpec, boundary_point

# The formal eigenvalue of y^{N/p - k + is} dx^J sits on the boundary.
spec = RegionSpec(3, 1, 1.5)
for s in (-1.0, 0.0, 2.0):
    mu = hs.weyl_exponent(spec, s)
    form = hs.TemplateForm.single(3, hs.BasisForm.B((1,)), hs.Monomial(mu=mu))
    lam = hs.formal_eigenvalue(form)
    print(f"s={s:+.1f}: Delta eigenvalue {lam:.6f}, boundary {boundary_point(spec, s):.6f}")

# Both Laplacian routes agree: the product rule and d delta + delta d.
form = hs.weyl_form(3, spec, 0.5)
diff = hs.laplacian(form) - hs.laplacian(form, method="hodge")
y = np.exp(np.linspace(-5, 1, 40))
xs = [np.full_like(y, 0.1), np.full_like(y, -0.2), np.full_like(y, 0.3)]
print("max |product - hodge| on a y-line:", float(np.max(diff.pointwise_norm(y, xs))))

# Residual quotients of the cut-off sequence for functions on H^2.
small = RegionSpec(1, 0, 1.0)
ns = [2, 4, 8]
qs = [hs.weyl_quotient(n, small, 0.0) for n in ns]
slope = np.polyfit(np.log(ns), np.log(qs), 1)[0]
print("n:", ns, "quotients:", np.round(qs, 4), f"fitted exponent {slope:.3f}")

# The harmonic middle-degree form is closed and co-closed.
phi = hs.middle_harmonic(1.0, 1, (2,), 3)
print("|d phi| terms:", len(hs.exterior_derivative(phi)), " |delta phi| terms:", len(hs.codifferential(phi)))
