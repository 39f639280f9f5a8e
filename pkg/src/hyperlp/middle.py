"""Harmonic middle-degree forms on H^{N+1} (N odd) and their L^p tails.

The radial profile of the harmonic ``(N+1)/2``-forms is

    w(r) = tanh(r/2)^{sqrt(lam) - 1/2} / cosh(r/2),

and the pointwise norm of the form is ``sinh(r)^{-N/2} w(r)`` up to a
spherical factor independent of ``r``.  With the volume density
``sinh(r)^N`` the L^p norm over ``r >= 1`` reduces to

    I(R) = int_1^R w(r)^p sinh(r)^{N - Np/2} dr,

whose integrand behaves like ``exp(e(p) r)`` with ``e(p) = -p/2 + N(1 - p/2)``.
The integral converges exactly when ``p > 2N/(N+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.optimize import bisect

from .radial import sphere_eigenvalue


@dataclass(frozen=True)
class MiddleFamily:
    """Odd ``N``, sphere eigenvalue ``lam`` of a co-closed ``(N-1)/2``-form, exponent ``p``."""

    N: int
    lam: float
    p: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1 or self.N % 2 != 1:
            raise ValueError(f"N must be a positive odd integer, got {self.N}")
        if not self.lam > 0.25:
            raise ValueError("lam must exceed 1/4 for w to vanish at r = 0")
        if not self.p >= 1:
            raise ValueError("p must be >= 1")

    @classmethod
    def lowest(cls, N: int, p: float, s: int = 0) -> "MiddleFamily":
        """Family attached to the ``s``-th co-closed eigenvalue in degree ``(N-1)/2``."""
        return cls(N, sphere_eigenvalue(N, (N - 1) // 2, s, "coclosed"), p)


@dataclass(frozen=True)
class TailIntegral:
    R: float
    value: float
    exponent_estimate: float


def wk(r, lam: float):
    """``tanh(r/2)^{sqrt(lam) - 1/2} / cosh(r/2)``."""
    r = np.asarray(r, dtype=float)
    return np.tanh(r / 2) ** (math.sqrt(lam) - 0.5) / np.cosh(r / 2)


def log_integrand(r, family: MiddleFamily):
    """``log(w^p sinh^{N - Np/2})``, computed without overflow."""
    r = np.asarray(r, dtype=float)
    N, p, lam = family.N, family.p, family.lam
    log_sinh = r + np.log1p(-np.exp(-2 * r)) - math.log(2)
    log_cosh = r / 2 + np.log1p(np.exp(-r)) - math.log(2)
    log_w = (math.sqrt(lam) - 0.5) * np.log(np.tanh(r / 2)) - log_cosh
    return p * log_w + N * (1 - p / 2) * log_sinh


def log_integrand_slope(r, family: MiddleFamily):
    """Exact ``d/dr`` of :func:`log_integrand`."""
    r = np.asarray(r, dtype=float)
    N, p, lam = family.N, family.p, family.lam
    return p * ((math.sqrt(lam) - 0.5) / np.sinh(r) - np.tanh(r / 2) / 2) + N * (1 - p / 2) / np.tanh(r)


def exponent(N: int, p: float) -> float:
    """Asymptotic rate ``e(p) = -p/2 + N(1 - p/2)`` of the tail integrand."""
    return -p / 2 + N * (1 - p / 2)


def threshold(N: int) -> float:
    """``2N/(N+1)``: the tail converges exactly for larger ``p``."""
    if int(N) != N or N < 1 or N % 2 != 1:
        raise ValueError(f"N must be a positive odd integer, got {N}")
    return 2 * N / (N + 1)


def _window_integral(family: MiddleFamily, a: float, b: float, spherical_factor: float = 1.0) -> float:
    val, _ = quad(lambda r: math.exp(float(log_integrand(r, family))), a, b, epsabs=0.0, epsrel=1e-10, limit=200)
    return spherical_factor * val


def measured_exponent(family: MiddleFamily, R: float = 40.0, width: float = 1.0) -> float:
    """Rate from two unit-window integrals at ``R/2`` and ``R``.

    For an integrand ``C exp(e r)`` the ratio of the two window integrals
    is exactly ``exp(e R/2)``.
    """
    lo = _window_integral(family, R / 2 - width, R / 2)
    hi = _window_integral(family, R - width, R)
    return math.log(hi / lo) / (R / 2)


def lp_tail(family: MiddleFamily, R: float, spherical_factor: float = 1.0) -> TailIntegral:
    """``I(R)`` by adaptive quadrature and the exponent estimate at ``R``."""
    if R < 2:
        raise ValueError("R must be >= 2")
    edges = np.unique(np.concatenate([np.arange(1.0, R, 5.0), [R]]))
    value = sum(_window_integral(family, a, b, spherical_factor) for a, b in zip(edges[:-1], edges[1:]))
    return TailIntegral(R, value, measured_exponent(family, R))


def converges(family: MiddleFamily, R: float = 40.0) -> bool:
    return measured_exponent(family, R) < 0


def detect_threshold(N: int, lam: float | None = None, lo: float = 1.0, hi: float = 2.0, xtol: float = 1e-4, R: float = 40.0) -> float:
    """Bisection on ``p`` for the sign change of the measured exponent."""
    if lam is None:
        lam = MiddleFamily.lowest(N, 1.0).lam

    def rate(p):
        return measured_exponent(MiddleFamily(N, lam, p), R)

    if not rate(lo) > 0 > rate(hi):
        raise ValueError("no sign change of the exponent on the bracket")
    return bisect(rate, lo, hi, xtol=xtol)


def pairing_divergence(lam: float, R: float) -> float:
    """``J(R) = int_1^R tanh(r/2)^{sqrt(lam)} / (1 + r) dr``; grows like ``log R``."""
    if lam <= 0:
        raise ValueError("lam must be positive")
    if R < 2:
        raise ValueError("R must be >= 2")
    rt = math.sqrt(lam)

    # substitute r = e^u so the 1/(1+r) tail becomes smooth
    def f(u):
        r = math.exp(u)
        return math.tanh(r / 2) ** rt * r / (1 + r)

    val, _ = quad(f, 0.0, math.log(R), epsabs=0.0, epsrel=1e-12, limit=200)
    return val
