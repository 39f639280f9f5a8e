"""Radial eigen-equation for co-closed k-forms on the ball model of H^{N+1}.

With ``f = sinh r`` and a co-closed spherical eigenform of eigenvalue
``lam``, the radial profile satisfies

    phi'' + (N - 2k) coth(r) phi' - lam phi / sinh(r)^2 + Lam phi = 0.

``r = 0`` is a regular-singular point with indicial equation
``alpha(alpha - 1) + (N - 2k) alpha - lam = 0``.  At infinity the solutions
behave like ``exp((-m +- lambda_o) r)`` with ``m = (N - 2k)/2`` and
``lambda_o = sqrt(m^2 - Lam)``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

# Multiplies the right side of ``a < N (1/2 - 1/p)``.  Exposed so a
# deliberately wrong value can be injected to exercise the check suite.
LP_THRESHOLD_SCALE = 1.0

# rescale the solution once |phi| passes this value
RENORM_THRESHOLD = 1e100


class EnvelopeFitWarning(UserWarning):
    """The log-envelope of |phi| is not close to a straight line on the window."""


@dataclass(frozen=True)
class RadialProblem:
    """``(N, k, lam, Lam)`` of the radial equation."""

    N: int
    k: int
    sphere_eig: float
    spectral: complex

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        if not 0 <= self.k <= self.N:
            raise ValueError(f"degree k={self.k} out of range [0, {self.N}]")
        if not self.sphere_eig >= 0:
            raise ValueError("sphere eigenvalue must be nonnegative")
        object.__setattr__(self, "spectral", complex(self.spectral))

    @property
    def m(self) -> float:
        return (self.N - 2 * self.k) / 2

    @property
    def drift(self) -> float:
        """Coefficient ``N - 2k`` of ``coth(r) phi'``."""
        return float(self.N - 2 * self.k)


@dataclass(frozen=True)
class FrobeniusData:
    """Leading index ``alpha`` and the even coefficients of ``phi r^{-alpha}``."""

    alpha: float
    series: tuple

    def value(self, r: float) -> tuple[complex, complex]:
        """``(phi(r), phi'(r))`` from the truncated series."""
        a = self.alpha
        phi = sum(c * r ** (a + 2 * i) for i, c in enumerate(self.series))
        dphi = sum(c * (a + 2 * i) * r ** (a + 2 * i - 1) for i, c in enumerate(self.series))
        return complex(phi), complex(dphi)


@dataclass(frozen=True)
class GrowthData:
    """``lambda_o = a + ib`` and, when measured, the fitted growth slope."""

    a: float
    b: float
    fitted_slope: float = math.nan
    fit_window: tuple = (math.nan, math.nan)
    fit_residual: float = math.nan


@dataclass(frozen=True)
class Profile:
    """Samples of ``phi`` and ``phi'``.

    The true values are ``phi * exp(log_scale)``; ``log_scale`` records the
    renormalisations applied during integration.
    """

    r: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    log_scale: np.ndarray
    problem: RadialProblem = field(repr=False)
    alpha: float = math.nan

    def log_abs(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.phi)) + self.log_scale

    def rows(self):
        """``(r, |phi|, arg phi)`` rows; ``|phi|`` includes the recorded scale."""
        mag = np.exp(self.log_abs())
        return np.column_stack([self.r, mag, np.angle(self.phi)])


def sphere_eigenvalue(N: int, k: int, s: int, mode: str = "coclosed") -> float:
    """Eigenvalues of the Laplacian on closed or co-closed k-forms of S^N."""
    if not 0 <= k <= N:
        raise ValueError(f"degree k={k} out of range [0, {N}]")
    if int(s) != s or s < 0:
        raise ValueError("s must be a nonnegative integer")
    if mode == "closed":
        return float((s + k) * (s + N - k + 1))
    if mode == "coclosed":
        return float((N - k + s) * (s + k + 1))
    raise ValueError(f"mode must be 'closed' or 'coclosed', got {mode!r}")


def indicial(N: int, k: int, lam: float, alpha) -> complex:
    return alpha * (alpha - 1) + (N - 2 * k) * alpha - lam


def frobenius_index(N: int, k: int, lam: float, Lam: complex = 0.0, n_terms: int = 8) -> FrobeniusData:
    """Larger indicial root and ``n_terms`` even series coefficients (``c_0 = 1``).

    The series solves the equation multiplied by ``sinh(r)^2``, using
    ``sinh^2 r = sum P_j r^{2j}`` and ``sinh r cosh r = r sum Q_j r^{2j}``.
    """
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    q = N - 2 * k - 1
    alpha = (-q + math.sqrt(q * q + 4 * lam)) / 2
    drift = N - 2 * k
    Lam = complex(Lam)
    P = [0.0] + [2.0 ** (2 * j - 1) / math.factorial(2 * j) for j in range(1, n_terms + 1)]
    Q = [2.0 ** (2 * j) / math.factorial(2 * j + 1) for j in range(n_terms + 1)]
    c = [1.0 + 0j]
    for i in range(1, n_terms):
        acc = 0j
        for j in range(i):
            beta = alpha + 2 * j
            gap = i - j
            # sinh^2 phi'' beyond the leading P_1 term
            acc += P[gap + 1] * c[j] * beta * (beta - 1)
            acc += drift * Q[gap] * c[j] * beta
            acc += Lam * P[gap] * c[j]
        c.append(-acc / indicial(N, k, lam, alpha + 2 * i))
    return FrobeniusData(alpha, tuple(c))


def _rhs(problem: RadialProblem):
    drift, lam, Lam = problem.drift, problem.sphere_eig, problem.spectral

    def f(r, u):
        phi, dphi = u
        sh = math.sinh(r)
        return [dphi, -drift * dphi / math.tanh(r) + (lam / (sh * sh) - Lam) * phi]

    return f


def _default_grid(r0: float, R: float, dr: float) -> np.ndarray:
    """Geometric nodes on ``[r0, 1]`` followed by uniform spacing ``dr``."""
    if R <= 1:
        return np.geomspace(r0, R, 200)
    head = np.geomspace(r0, 1.0, 200)
    tail = np.arange(1.0, R, dr)[1:]
    return np.concatenate([head, tail, [R]])


def integrate(
    problem: RadialProblem,
    r0: float = 1e-3,
    R: float = 80.0,
    tol: float = 1e-10,
    r_eval=None,
    dr: float = 0.02,
    scale: complex = 1.0,
    segment: float = 5.0,
) -> Profile:
    """Solution regular at 0, normalised as ``scale * r^alpha (1 + O(r^2))``.

    Starts from the Frobenius series at ``r0`` (truncated once terms drop
    below ``1e-14`` relative) and continues with DOP853 at ``rtol = tol``.
    The integration runs in segments of length ``segment``; whenever
    ``|(phi, phi')|`` leaves ``[1/RENORM_THRESHOLD, RENORM_THRESHOLD]`` the
    state is rescaled and the logarithm of the factor is recorded.
    """
    if not 0 < r0 < R:
        raise ValueError("need 0 < r0 < R")
    if tol <= 0:
        raise ValueError("tol must be positive")
    fro = _truncated_series(problem, r0)
    phi0, dphi0 = fro.value(r0)
    r_eval = _default_grid(r0, R, dr) if r_eval is None else np.asarray(r_eval, dtype=float)
    if r_eval[0] < r0 or r_eval[-1] > R or np.any(np.diff(r_eval) <= 0):
        raise ValueError("r_eval must be strictly increasing inside [r0, R]")

    rhs = _rhs(problem)
    u = np.array([phi0, dphi0], dtype=complex) * complex(scale)
    log_scale = 0.0
    r_out, phi_out, dphi_out, ls_out = [], [], [], []
    edges = np.unique(np.concatenate([[r0], np.arange(r0, R, segment)[1:], [R]]))
    for a, b in zip(edges[:-1], edges[1:]):
        pick = r_eval[(r_eval >= a) & ((r_eval < b) | (b == R))]
        # absolute tolerance tracks the current size so decaying solutions stay resolved
        atol = tol * 1e-3 * float(np.max(np.abs(u)))
        sol = solve_ivp(rhs, (a, b), u, method="DOP853", rtol=tol, atol=atol, t_eval=pick if pick.size else None)
        if sol.status != 0:
            raise RuntimeError(f"integration failed on [{a}, {b}]: {sol.message}")
        if pick.size:
            r_out.append(sol.t)
            phi_out.append(sol.y[0])
            dphi_out.append(sol.y[1])
            ls_out.append(np.full(sol.t.shape, log_scale))
        u = sol.y[:, -1] if sol.t[-1] == b else _endpoint(rhs, a, b, u, tol, atol)
        size = float(np.max(np.abs(u)))
        if not 1 / RENORM_THRESHOLD <= size <= RENORM_THRESHOLD:
            u = u / size
            log_scale += math.log(size)
    return Profile(
        np.concatenate(r_out),
        np.concatenate(phi_out),
        np.concatenate(dphi_out),
        np.concatenate(ls_out),
        problem,
        fro.alpha,
    )


def _endpoint(rhs, a, b, u, tol, atol):
    sol = solve_ivp(rhs, (a, b), u, method="DOP853", rtol=tol, atol=atol)
    if sol.status != 0:
        raise RuntimeError(f"integration failed on [{a}, {b}]: {sol.message}")
    return sol.y[:, -1]


def _truncated_series(problem: RadialProblem, r0: float, max_terms: int = 40) -> FrobeniusData:
    fro = frobenius_index(problem.N, problem.k, problem.sphere_eig, problem.spectral, max_terms)
    terms = [abs(c) * r0 ** (2 * i) for i, c in enumerate(fro.series)]
    n = next((i for i, t in enumerate(terms) if i > 0 and t < 1e-14 * abs(fro.series[0])), len(terms))
    return FrobeniusData(fro.alpha, fro.series[: max(n, 1)])


def defect(problem: RadialProblem, tol: float, points=(5.0, 10.0, 20.0, 30.0), R: float = 30.0) -> float:
    """Max relative deviation of the solution at ``tol`` from one at ``tol / 1000``.

    Compares renormalised samples at the checkpoints ``points``.
    """
    pts = np.asarray(points, dtype=float)
    ref_tol = max(tol * 1e-3, 1e-14)
    run = integrate(problem, R=R, tol=tol, r_eval=pts)
    ref = integrate(problem, R=R, tol=ref_tol, r_eval=pts)
    a = run.phi * np.exp(run.log_scale - ref.log_scale)
    return float(np.max(np.abs(a - ref.phi) / np.abs(ref.phi)))


def lambda_o(Lam: complex, m: float) -> GrowthData:
    """``sqrt(m^2 - Lam) = a + ib`` with ``a >= 0`` by the closed form for ``a^2``."""
    Lam = complex(Lam)
    x, y = Lam.real, Lam.imag
    u = m * m - x
    a2 = 0.5 * (u + math.hypot(u, y))
    a = math.sqrt(max(a2, 0.0))
    if a > 0:
        b = -y / (2 * a)
    else:
        # a = 0 only when Lam is real with Lam >= m^2
        b = math.sqrt(max(x - m * m, 0.0))
    return GrowthData(a, b)


def _window(a: float, R_default: float = 80.0) -> tuple[float, float]:
    """Fit window for the growth slope.

    When ``a`` is small the two exponentials are hard to separate and the
    vertex case carries a ``log r`` correction, so a longer range is used.
    """
    if a < 0.1:
        return (100.0, 200.0)
    return (R_default / 2, R_default)


def envelope(profile: Profile, window: tuple[float, float], block: float, trend: float = 0.0):
    """Windowed maxima ``(r, log |phi|)`` over consecutive blocks.

    Maxima are taken after removing the linear ``trend`` so that a steep
    slope does not pull every maximum to a block edge.
    """
    lo, hi = window
    la = profile.log_abs()
    sel = (profile.r >= lo) & (profile.r <= hi)
    r, la = profile.r[sel], la[sel]
    flat = la - trend * r
    n_blocks = max(int((hi - lo) // block), 2)
    idx = np.minimum(((r - lo) / (hi - lo) * n_blocks).astype(int), n_blocks - 1)
    centres, peaks = [], []
    for j in range(n_blocks):
        mask = idx == j
        if not mask.any():
            continue
        jj = np.argmax(flat[mask])
        centres.append(r[mask][jj])
        peaks.append(la[mask][jj])
    return np.array(centres), np.array(peaks)


def growth_exponent(profile: Profile, window=None, residual_tol: float = 0.05) -> GrowthData:
    """Least-squares slope of the log-envelope of ``|phi|`` on ``window``.

    The envelope takes the maximum over blocks one oscillation period long
    (``2 pi / |b|``, at least 1), after removing the current slope estimate;
    three passes are made.  Warns with :class:`EnvelopeFitWarning`
    when the fit residual exceeds ``residual_tol``.
    """
    pr = profile.problem
    g = lambda_o(pr.spectral, pr.m)
    if window is None:
        window = _window(g.a, profile.r[-1])
    if window[1] > profile.r[-1] + 1e-9:
        raise ValueError(f"profile ends at r={profile.r[-1]:.3g}, before the fit window {window}")
    block = max(2 * math.pi / abs(g.b), 1.0) if g.b else 1.0
    trend = 0.0
    for _ in range(3):
        centres, peaks = envelope(profile, window, block, trend)
        coef, res, *_ = np.polyfit(centres, peaks, 1, full=True)
        trend = float(coef[0])
    resid = math.sqrt(float(res[0]) / len(centres)) if len(res) else 0.0
    if resid > residual_tol:
        warnings.warn(f"envelope fit residual {resid:.3g} on window {window}", EnvelopeFitWarning, stacklevel=2)
    return GrowthData(g.a, g.b, float(coef[0]), tuple(window), resid)


def predicted_slope(problem: RadialProblem) -> float:
    """Dominant growth rate ``-m + a``."""
    return -problem.m + lambda_o(problem.spectral, problem.m).a


def measure_growth(problem: RadialProblem, tol: float = 1e-10) -> GrowthData:
    """Integrate far enough for the default window and fit the slope."""
    g = lambda_o(problem.spectral, problem.m)
    window = _window(g.a)
    dr = min(0.02, 0.05 * 2 * math.pi / abs(g.b)) if g.b else 0.02
    profile = integrate(problem, R=window[1], tol=tol, dr=dr)
    return growth_exponent(profile, window)


def is_lp_integrable(Lam: complex, p: float, N: int, k: int) -> bool:
    """``a < N (1/2 - 1/p)``: the radial eigenform lies in L^p (``p > 2``)."""
    if not p > 2:
        raise ValueError("the integrability criterion needs p > 2")
    m = (N - 2 * k) / 2
    a = lambda_o(Lam, m).a
    return a < LP_THRESHOLD_SCALE * N * (0.5 - (0.0 if math.isinf(p) else 1.0 / p))


def sqrt_branch(Lam: complex, m: float) -> complex:
    """Principal ``sqrt(m^2 - Lam)``; agrees with :func:`lambda_o` off the cut."""
    return cmath.sqrt(m * m - complex(Lam))
