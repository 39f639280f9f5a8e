"""
Harmonic forms in the middle degree
===================================

For odd N the harmonic (N+1)/2-forms built from sphere eigenforms have a
radial tail whose L^p integral converges exactly when p > 2N/(N+1).
"""

from hyperlp import middle as md

for N in (3, 5, 7):
    fam_lo = md.MiddleFamily.lowest(N, 1.0)
    print(f"N={N}: lowest sphere eigenvalue {fam_lo.lam}, threshold {md.threshold(N):.4f}, detected {md.detect_threshold(N):.4f}")

# The integrand behaves like exp(e(p) r) with e(p) = -p/2 + N(1 - p/2).
N = 3
for p in (1.0, 1.5, 2.0, 3.0):
    fam = md.MiddleFamily.lowest(N, p)
    tail = md.lp_tail(fam, 30.0)
    print(f"p={p}: e(p)={md.exponent(N, p):+.3f}, measured {tail.exponent_estimate:+.4f}, I(30)={tail.value:.4g}")

# The pairing integral grows like log R, so the L^2 pairing argument fails.
for R in (1e2, 1e3, 1e4):
    print(f"J({R:g}) = {md.pairing_divergence(4.0, R):.4f}")
