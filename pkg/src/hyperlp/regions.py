"""Parabolic spectral regions Q_{p,k} of the k-form Laplacian on H^{N+1}.

For ``k <= (N+1)/2`` the region is

    Q_{p,k} = { (N/2 - k)^2 + z^2 : |Im z| <= |N/p - N/2| },

and ``Q_{p,k} = Q_{p,N+1-k}`` above the middle degree.  Its boundary is the
parabola P_{p,k}.  At ``p = 2`` the region collapses to the ray
``[(N/2 - k)^2, oo)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ATOL = 1e-12


@dataclass(frozen=True)
class SpectralPoint:
    """A candidate spectral value ``re + i*im``."""

    re: float
    im: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError(f"spectral point must be finite, got {self.re}+{self.im}i")

    @classmethod
    def of(cls, value) -> "SpectralPoint":
        if isinstance(value, SpectralPoint):
            return value
        z = complex(value)
        return cls(z.real, z.imag)

    def __complex__(self):
        return complex(self.re, self.im)


@dataclass(frozen=True)
class RegionSpec:
    """(N, k, p) for the region Q_{p,k} in H^{N+1}; ``p`` may be ``math.inf``."""

    N: int
    k: int
    p: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if int(self.k) != self.k or not 0 <= self.k <= self.N + 1:
            raise ValueError(f"degree k={self.k} out of range [0, {self.N + 1}]")
        if not self.p >= 1:
            raise ValueError(f"p must be >= 1, got {self.p}")

    @property
    def reduced_degree(self) -> int:
        return reduce_degree(self.N, self.k)

    @property
    def geometry(self) -> "ParabolaGeometry":
        return parabola_geometry(self)

    def dual(self) -> "RegionSpec":
        return RegionSpec(self.N, self.k, dual_exponent(self.p))


@dataclass(frozen=True)
class ParabolaGeometry:
    vertex_v: float
    half_width_d: float


def dual_exponent(p: float) -> float:
    """Hoelder conjugate ``p*`` with ``1/p + 1/p* = 1``."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if p == 1:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def reduce_degree(N: int, k: int) -> int:
    """Map a degree above the middle to its Hodge dual ``N + 1 - k``."""
    if not 0 <= k <= N + 1:
        raise ValueError(f"degree k={k} out of range [0, {N + 1}]")
    return k if 2 * k <= N + 1 else N + 1 - k


def _inv(p: float) -> float:
    return 0.0 if math.isinf(p) else 1.0 / p


def parabola_geometry(spec: RegionSpec) -> ParabolaGeometry:
    kr = spec.reduced_degree
    v = (spec.N / 2 - kr) ** 2
    d = abs(spec.N * _inv(spec.p) - spec.N / 2)
    return ParabolaGeometry(v, d)


def boundary_point(spec: RegionSpec, s: float) -> complex:
    """Point of the boundary parabola P_{p,k} at parameter ``s``.

    Exponents above 2 are mapped to their duals first, since the spectra agree.
    Evaluates ``-(N/p + is - k)(N(1/p - 1) + is + k)`` with the reduced degree.
    """
    p = spec.p if spec.p <= 2 else dual_exponent(spec.p)
    N, kr = spec.N, spec.reduced_degree
    ip = _inv(p)
    return -(N * ip + 1j * s - kr) * (N * (ip - 1) + 1j * s + kr)


def boundary_points(spec: RegionSpec, s) -> np.ndarray:
    """Vectorised :func:`boundary_point` over an array of parameters."""
    s = np.asarray(s, dtype=float)
    p = spec.p if spec.p <= 2 else dual_exponent(spec.p)
    N, kr = spec.N, spec.reduced_degree
    ip = _inv(p)
    return -(N * ip + 1j * s - kr) * (N * (ip - 1) + 1j * s + kr)


def region_gap(spec: RegionSpec, lam) -> float:
    """Signed horizontal distance of ``lam`` to the right of the boundary.

    Positive inside, zero on the boundary, negative outside.  For ``p = 2``
    (degenerate ray) the value is ``-inf`` off the real axis.
    """
    lam = SpectralPoint.of(lam)
    g = parabola_geometry(spec)
    if g.half_width_d == 0:
        if abs(lam.im) > ATOL:
            return -math.inf
        return lam.re - g.vertex_v
    d2 = g.half_width_d**2
    return lam.re - (g.vertex_v - d2 + lam.im**2 / (4 * d2))


def contains(spec: RegionSpec, lam, mode: str = "closed", margin: float = 0.0) -> bool:
    """Membership of ``lam`` in Q_{p,k}.

    ``mode='closed'`` tests the closed region, admitting points up to
    ``margin`` outside; ``mode='interior'`` requires the point to be more
    than ``margin`` inside.  The p = 2 ray has empty interior.
    """
    if mode not in ("closed", "interior"):
        raise ValueError(f"mode must be 'closed' or 'interior', got {mode!r}")
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    lam = SpectralPoint.of(lam)
    g = parabola_geometry(spec)
    if g.half_width_d == 0:
        if mode == "interior":
            return False
        return abs(lam.im) <= ATOL + margin and lam.re >= g.vertex_v - ATOL - margin
    gap = region_gap(spec, lam)
    if mode == "closed":
        return gap >= -(ATOL + margin)
    return gap > ATOL + margin


def spectrum_contains(spec: RegionSpec, lam) -> bool:
    """Membership in the full L^p spectrum, including the isolated 0 in middle degree."""
    lam = SpectralPoint.of(lam)
    if contains(spec, lam, "closed"):
        return True
    middle = spec.N % 2 == 1 and 2 * spec.reduced_degree == spec.N + 1
    return middle and abs(lam.re) <= ATOL and abs(lam.im) <= ATOL


def is_lp_eigenvalue(spec: RegionSpec, lam, margin: float = 0.0) -> bool:
    """Interior points are eigenvalues for ``p > 2``; nothing is for ``p <= 2``."""
    if spec.p <= 2:
        return False
    return contains(spec, lam, "interior", margin=margin)


def bottom_values(N: int, k: int) -> tuple[float, float]:
    """Bottoms ``((N/2 - k + 1)^2, (N/2 - k)^2)`` of the two formal eigenvalue families."""
    kr = reduce_degree(N, k)
    return ((N / 2 - kr + 1) ** 2, (N / 2 - kr) ** 2)


def zero_exclusion_window(N: int) -> tuple[float, float]:
    """Open interval of ``p`` where 0 lies outside Q_{p,(N+1)/2} (N odd)."""
    if N % 2 != 1:
        raise ValueError("the middle degree (N+1)/2 exists only for odd N")
    lo = 2 * N / (N + 1)
    hi = math.inf if N == 1 else 2 * N / (N - 1)
    return lo, hi


def union_parameter(spec: RegionSpec, lam) -> tuple[float, float, float]:
    """Find ``q`` in ``[p, 2]`` with ``lam`` on P_{q,k}.

    Returns ``(q, s, residual)`` where ``s`` is the parabola parameter and
    ``residual = |boundary_point(q, s) - lam|``.  Requires ``p <= 2`` and
    ``lam`` in the closed region.
    """
    from scipy.optimize import brentq

    lam = complex(SpectralPoint.of(lam))
    if spec.p > 2:
        spec = spec.dual()
    v = parabola_geometry(spec).vertex_v
    target = abs(np.sqrt(lam - v).imag)

    def width(q):
        return abs(spec.N / q - spec.N / 2)

    def h(q):
        return width(q) - target

    if h(spec.p) < -1e-12:
        raise ValueError("point lies outside the region")
    if h(2.0) >= 0:
        q = 2.0
    elif abs(h(spec.p)) <= 1e-15:
        q = spec.p
    else:
        q = brentq(h, spec.p, 2.0, xtol=1e-15, rtol=1e-15)
    spec_q = RegionSpec(spec.N, spec.k, q)
    # boundary_point(q, s) = v + z^2 with z = -s + i d_q, so take Im z >= 0
    z = complex(np.sqrt(lam - v))
    if z.imag < 0:
        z = -z
    s = -z.real
    resid = abs(boundary_point(spec_q, s) - lam)
    return q, s, resid
