"""Kernel-level checks on hyperbolic space.

H^3 serves as the model with closed-form heat kernel

    h(t, r) = (4 pi t)^{-3/2} (r / sinh r) exp(-t - r^2 / (4t)),

from which resolvent kernels, Gaussian bounds and mass identities are
tested.  Volume growth and finite propagation speed are checked on
H^{N+1} for general N.  The last three checks cover scalar lemmas used
in the functional calculus: a Taylor identity, the exponential decay of a
Fourier transform and symbol estimates for ``1/(w - z^2)``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import minimize
from scipy.special import gammaln, kve

from .report import CheckReport

# geometry of H^3 used in the Gaussian bound: Ric = -2
K1_H3 = 2.0


def _log_r_over_sinh(r):
    """``log(r / sinh r)`` for ``r >= 0`` without overflow."""
    r = np.asarray(r, dtype=float)
    small = r < 1e-4
    safe = np.where(small, 1.0, r)
    big = safe - np.log(safe) + np.log1p(-np.exp(-2 * safe)) - math.log(2)
    return np.where(small, -(r**2) / 6, -big)


def _log_sinh(r):
    r = np.asarray(r, dtype=float)
    return r + np.log1p(-np.exp(-2 * r)) - math.log(2)


def log_h3_heat(t, r):
    """``log h(t, r)``; finite where ``h`` itself underflows."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise ValueError("t must be positive")
    return -1.5 * np.log(4 * math.pi * t) + _log_r_over_sinh(r) - t - np.asarray(r, dtype=float) ** 2 / (4 * t)


def h3_heat(t, r):
    """Heat kernel of H^3 at time ``t`` and distance ``r``."""
    return np.exp(log_h3_heat(t, r))


def _radial_mass(log_density, r_max: float, peak: float = 0.0) -> float:
    """``int_0^r_max exp(log_density(r)) 4 pi sinh^2 r dr``."""

    def f(r):
        if r == 0:
            return 0.0
        return math.exp(float(log_density(r)) + 2 * float(_log_sinh(r)) + math.log(4 * math.pi))

    pts = [p for p in (peak,) if 0 < p < r_max]
    val, _ = quad(f, 0.0, r_max, points=pts or None, epsabs=0.0, epsrel=1e-12, limit=400)
    return val


def heat_mass(t: float) -> float:
    """``int h(t, r) dV``; the integrand peaks near ``r = 2t``."""
    r_max = 2 * t + 40 * math.sqrt(t) + 10

    def log_h(r):
        return float(log_h3_heat(t, r))

    return _radial_mass(log_h, r_max, peak=2 * t)


def semigroup_defect(s: float, t: float) -> float:
    """``|int h_s h_t dV - h_{s+t}(0)| / h_{s+t}(0)``: composition at the diagonal."""
    r_max = 2 * (s + t) + 40 * math.sqrt(s + t) + 10

    def log_hh(r):
        return float(log_h3_heat(s, r) + log_h3_heat(t, r))

    comp = _radial_mass(log_hh, r_max)
    ref = float(h3_heat(s + t, 0.0))
    return abs(comp - ref) / ref


def ball_volume_h3(rho):
    """``vol B(rho) = pi (sinh 2rho - 2rho)`` in H^3."""
    rho = np.asarray(rho, dtype=float)
    return math.pi * (np.sinh(2 * rho) - 2 * rho)


def _gaussian_log_ratio(t, r):
    """Split ``log(h / (vol(B(sqrt t))^{-1} e^{sqrt(K1 t)} e^{-r^2/(C2 t)}))`` as ``A + B / C2``."""
    T, Rr = np.meshgrid(t, r, indexing="ij")
    A = log_h3_heat(T, Rr) + np.log(ball_volume_h3(np.sqrt(T))) - np.sqrt(K1_H3 * T)
    return A, Rr**2 / T


@dataclass(frozen=True)
class GaussianFit:
    C1: float
    C2: float
    validated: bool
    worst_validation_ratio: float


def fit_gaussian_bound(t_grid, r_grid, t_val, r_val, candidates=None, inflation: float = 1.01) -> GaussianFit | None:
    """Smallest candidate ``C2`` whose ``C1`` (sup of the ratio on the test grid) survives validation.

    ``C1`` is inflated by ``inflation`` before checking the bound on the
    validation grid.  Returns ``None`` when no candidate up to 100 works.
    """
    if candidates is None:
        candidates = np.round(np.arange(1.0, 100.0 + 1e-9, 0.05), 10)
    A, B = _gaussian_log_ratio(t_grid, r_grid)
    Av, Bv = _gaussian_log_ratio(t_val, r_val)
    for C2 in candidates:
        log_C1 = float(np.max(A + B / C2)) + math.log(inflation)
        log_worst = float(np.max(Av + Bv / C2)) - log_C1
        if log_worst <= 0.0:
            return GaussianFit(math.exp(log_C1), float(C2), True, math.exp(log_worst))
    return None


def gaussian_bound_check(t_grid=None, r_grid=None, limit: float = 8.0) -> CheckReport:
    """Gaussian upper bound for the H^3 heat kernel with ``K1 = 2``."""
    t_grid = np.geomspace(0.01, 10.0, 30) if t_grid is None else np.asarray(t_grid, dtype=float)
    r_grid = np.linspace(0.0, 20.0, 201) if r_grid is None else np.asarray(r_grid, dtype=float)
    # finer in t over the same range, finer and twice as long in r
    t_val = np.geomspace(t_grid[0], t_grid[-1], 4 * len(t_grid))
    r_val = np.linspace(0.0, 2 * r_grid[-1], 8 * len(r_grid))
    fit = fit_gaussian_bound(t_grid, r_grid, t_val, r_val)
    anchor = "Gaussian upper bound for the heat kernel"
    if fit is None:
        return CheckReport("gaussian_bound", math.inf, limit, 0.0, False, anchor, {"feasible": False})
    return CheckReport.bound(
        "gaussian_bound", fit.C2, limit, anchor, C1=fit.C1, validation_ratio=fit.worst_validation_ratio
    )


def resolvent_kernel(m: float, xi: float, r: float, method: str = "quad") -> float:
    """``(1/Gamma(m)) int_0^oo t^{m-1} e^{-xi^2 t} h(t, r) dt``.

    ``method='quad'`` integrates in ``t``; ``method='bessel'`` uses
    ``int t^{nu-1} e^{-at-b/t} dt = 2 (b/a)^{nu/2} K_nu(2 sqrt(ab))``.
    """
    if m <= 0 or xi <= 0:
        raise ValueError("m and xi must be positive")
    if r <= 0 and m <= 1.5:
        raise ValueError("the kernel is singular on the diagonal for m <= 3/2")
    a = 1.0 + xi * xi
    b = r * r / 4
    pref = -gammaln(m) - 1.5 * math.log(4 * math.pi) + float(_log_r_over_sinh(r))
    nu = m - 1.5
    if method == "bessel":
        if r == 0:
            return math.exp(pref + gammaln(nu) - nu * math.log(a))
        z = 2 * math.sqrt(a * b)
        return math.exp(pref + math.log(2) + 0.5 * nu * math.log(b / a) + math.log(kve(nu, z)) - z)
    if method != "quad":
        raise ValueError(f"unknown method {method!r}")

    # t = e^u turns t^{nu-1} dt into e^{nu u} du
    def f(u):
        t = math.exp(u)
        return math.exp(pref + nu * u - a * t - (b / t if b else 0.0))

    peak = math.log(max((nu + math.sqrt(nu * nu + 4 * a * b)) / (2 * a), 1e-300))
    hi = peak + 40.0
    # below t ~ b the factor e^{-b/t} cuts off; with b = 0 only t^nu does
    lo = -math.inf if b == 0 else min(peak - 40.0, math.log(b) - 5.0)
    if b == 0:
        val = quad(f, lo, peak, epsabs=0.0, epsrel=1e-11, limit=400)[0] + quad(f, peak, hi, epsabs=0.0, epsrel=1e-11, limit=400)[0]
    else:
        val, _ = quad(f, lo, hi, points=[peak], epsabs=0.0, epsrel=1e-11, limit=400)
    tail = (0.0 if b == 0 else f(lo)) + f(hi)
    if tail > 1e-12 * val:
        warnings.warn("resolvent quadrature window truncates the integrand", RuntimeWarning, stacklevel=2)
    return val


def resolvent_mass(m: float, xi: float) -> float:
    """``int g_{m,xi} dV``; expected ``xi^{-2m}`` since the heat kernel has unit mass."""
    a = 1.0 + xi * xi
    decay = math.sqrt(a) - 1  # net decay rate of g sinh^2 r
    r_max = 60.0 / decay + 20

    def log_g(r):
        return math.log(resolvent_kernel(m, xi, r, "bessel"))

    return _radial_mass(log_g, r_max)


def impo_holds(sigma, d, t, C2, rtol: float = 1e-12):
    """``-d^2/(4 C2 t) - sigma^2 t <= -sigma d / sqrt(C2)`` (AM-GM), elementwise."""
    sigma, d, t, C2 = (np.asarray(v, dtype=float) for v in (sigma, d, t, C2))
    lhs = -(d**2) / (4 * C2 * t) - sigma**2 * t
    rhs = -sigma * d / np.sqrt(C2)
    return lhs <= rhs + rtol * (np.abs(lhs) + np.abs(rhs))


def impo_check(samples: int = 100_000, seed: int = 0) -> CheckReport:
    """Random search for violations of the AM-GM inequality above."""
    rng = np.random.default_rng(seed)
    sigma = np.exp(rng.uniform(-5, 5, samples))
    d = np.exp(rng.uniform(-5, 5, samples))
    C2 = np.exp(rng.uniform(-3, 5, samples))
    # half the samples sit at the equality point t = d / (2 sigma sqrt(C2))
    t = np.where(rng.random(samples) < 0.5, d / (2 * sigma * np.sqrt(C2)), np.exp(rng.uniform(-8, 8, samples)))
    failures = int(np.count_nonzero(~impo_holds(sigma, d, t, C2)))
    return CheckReport("impo_inequality", failures, 0, 0.0, failures == 0, "essential inequality", {"samples": samples})


def schur_constant(K, w, rstar: float) -> float:
    """``max(sup_i ||K_i.||_{r*}, sup_j ||K_.j||_{r*})`` with cell measure ``w``."""
    K = np.abs(np.asarray(K, dtype=float))
    w = np.asarray(w, dtype=float)
    rows = (K**rstar @ w) ** (1 / rstar)
    cols = (w @ K**rstar) ** (1 / rstar)
    return float(max(rows.max(), cols.max()))


def _norm(f, w, p):
    return float((np.abs(f) ** p @ w) ** (1 / p))


def schur_ratio(K, w, p: float, q: float, rstar: float, vectors) -> float:
    """Largest ``||T v||_q / (C ||v||_p)`` over ``vectors``, ``(T v)_i = sum_j K_ij v_j w_j``."""
    if abs(1 + 1 / q - 1 / p - 1 / rstar) > 1e-12:
        raise ValueError("exponents must satisfy 1 + 1/q = 1/p + 1/r*")
    if q < p:
        raise ValueError("need q >= p")
    C = schur_constant(K, w, rstar)
    K = np.asarray(K, dtype=float)
    worst = 0.0
    for v in vectors:
        Tv = K @ (v * w)
        worst = max(worst, _norm(Tv, w, q) / (C * _norm(v, w, p)))
    return worst


def schur_bound_check(trials: int = 100, n: int = 40, seed: int = 0) -> CheckReport:
    """Random nonnegative kernels, weights and exponent triples; counts bound violations."""
    rng = np.random.default_rng(seed)
    violations, worst = 0, 0.0
    for _ in range(trials):
        p = rng.uniform(1.0, 4.0)
        q = rng.uniform(p, 8.0)
        rstar = 1.0 / (1 + 1 / q - 1 / p)
        K = rng.exponential(size=(n, n)) * (rng.random((n, n)) < 0.5)
        w = rng.uniform(0.1, 2.0, n)
        vecs = [rng.standard_normal(n) for _ in range(5)] + [np.abs(rng.standard_normal(n))]
        ratio = schur_ratio(K, w, p, q, rstar, vecs)
        worst = max(worst, ratio)
        violations += ratio > 1 + 1e-12
    return CheckReport(
        "schur_test", violations, 0, 0.0, violations == 0, "Schur test with 1 + 1/q = 1/p + 1/r*",
        {"trials": trials, "max_ratio": worst},
    )


def sphere_area(N: int) -> float:
    """Area of the unit sphere S^N."""
    return 2 * math.pi ** ((N + 1) / 2) / math.gamma((N + 1) / 2)


def log_ball_volume(N: int, R: float) -> float:
    """``log(area(S^N) int_0^R sinh^N) ``, accumulated in log space."""
    if R <= 0:
        raise ValueError("R must be positive")
    # int_0^R sinh^N = e^{N R} int_0^R exp(N log sinh(rho) - N R)
    shift = N * float(_log_sinh(R)) if R > 1 else 0.0

    def f(rho):
        return math.exp(N * float(_log_sinh(rho)) - shift) if rho > 0 else 0.0

    val, _ = quad(f, 0.0, R, epsabs=0.0, epsrel=1e-13, limit=200)
    return math.log(sphere_area(N)) + shift + math.log(val)


def volume_growth(N: int, R_grid=None, R_test: float = 40.0, tol: float = 1e-2, eps: float = 0.1) -> CheckReport:
    """Growth rate of geodesic balls in H^{N+1}.

    Checks ``|log vol(B_R)/R - N| <= tol`` at ``R_test`` and fits the
    smallest ``C`` with ``vol(B_R) <= C vol(B_1) e^{(N + eps) R}`` on the
    grid; the bound must then hold on ``[R_max, 2 R_max]``, beyond the fit.
    """
    R_grid = np.linspace(1.0, 50.0, 50) if R_grid is None else np.asarray(R_grid, dtype=float)
    rate = log_ball_volume(N, R_test) / R_test
    log_v1 = log_ball_volume(N, 1.0)
    logs = np.array([log_ball_volume(N, R) for R in R_grid])
    log_C = float(np.max(logs - log_v1 - (N + eps) * R_grid))
    beyond = np.linspace(R_grid[-1], 2 * R_grid[-1], 25)
    holds = all(log_ball_volume(N, R) <= log_C + log_v1 + (N + eps) * R + 1e-12 for R in beyond)
    # entropy from the slope of log vol on the upper half of the grid
    upper = R_grid >= R_grid[-1] / 2
    slope = float(np.polyfit(R_grid[upper], logs[upper], 1)[0])
    ok = abs(rate - N) <= tol and holds
    return CheckReport(
        f"volume_growth_N{N}", rate, float(N), tol, ok, "exponential rate of volume growth",
        {"C_eps": math.exp(log_C), "eps": eps, "bound_holds": holds, "entropy_slope": slope},
    )


def volume_entropy_slope(N: int, R_lo: float = 20.0, R_hi: float = 40.0) -> float:
    """``(log vol(B_hi) - log vol(B_lo)) / (R_hi - R_lo)``; tends to N at rate e^{-2R}."""
    return (log_ball_volume(N, R_hi) - log_ball_volume(N, R_lo)) / (R_hi - R_lo)


# ---------------------------------------------------------------------------
# radial waves


def smooth_bump(r, r0: float, delta: float):
    """``exp(1 - 1/(1 - s^2))`` with ``s = (r - r0)/delta``, zero outside."""
    s = (np.asarray(r, dtype=float) - r0) / delta
    out = np.zeros_like(s)
    inside = np.abs(s) < 1
    out[inside] = np.exp(1 - 1 / (1 - s[inside] ** 2))
    return out


@dataclass
class WaveState:
    r: np.ndarray
    u: np.ndarray
    v: np.ndarray
    t: float
    h: float
    dt: float


def _wave_operator(N: int, r: np.ndarray, h: float):
    """Discrete ``u_rr + N coth(r) u_r`` with a Neumann condition at ``r = 0``."""
    coth = np.zeros_like(r)
    coth[1:] = 1 / np.tanh(r[1:])

    def L(u):
        out = np.empty_like(u)
        out[1:-1] = (u[2:] - 2 * u[1:-1] + u[:-2]) / h**2 + N * coth[1:-1] * (u[2:] - u[:-2]) / (2 * h)
        # at r = 0 symmetry gives u_rr + N coth u_r -> (N + 1) u_rr with u_{-1} = u_1
        out[0] = (N + 1) * 2 * (u[1] - u[0]) / h**2
        out[-1] = 0.0
        return out

    return L


def evolve_wave(N: int, R: float, T: float, h: float, r0: float = 3.0, delta: float = 0.5, cfl: float = 0.5, pad: float = 1.0) -> WaveState:
    """Leapfrog for ``u_tt = u_rr + N coth(r) u_r`` from rest with a bump at ``r0``.

    A damping layer of width ``pad`` next to ``r = R`` absorbs outgoing
    waves; the outer boundary is held at zero.
    """
    if cfl > 1:
        raise ValueError("CFL number must be <= 1")
    n = int(round(R / h))
    r = np.linspace(0.0, R, n + 1)
    h = r[1] - r[0]
    dt = cfl * h
    steps = int(math.ceil(T / dt - 1e-12))
    dt = T / steps if steps else dt
    L = _wave_operator(N, r, h)
    damp = np.where(r > R - pad, 20.0 * ((r - (R - pad)) / pad) ** 2, 0.0)
    u_prev = smooth_bump(r, r0, delta)
    if steps == 0:
        return WaveState(r, u_prev, np.zeros_like(r), 0.0, h, dt)
    # Taylor start from rest: u(dt) = u + dt^2/2 L u
    u = u_prev + 0.5 * dt**2 * L(u_prev)
    for _ in range(steps - 1):
        a = 1 / (1 + 0.5 * damp * dt)
        b = 1 - 0.5 * damp * dt
        u_next = a * (2 * u - b * u_prev + dt**2 * L(u))
        u_next[-1] = 0.0
        u_prev, u = u, u_next
    # velocity at T from one extra step
    a = 1 / (1 + 0.5 * damp * dt)
    u_next = a * (2 * u - (1 - 0.5 * damp * dt) * u_prev + dt**2 * L(u))
    v = (u_next - u_prev) / (2 * dt)
    return WaveState(r, u, v, T, h, dt)


def wave_energy_density(state: WaveState, N: int):
    ur = np.gradient(state.u, state.h)
    return 0.5 * (state.v**2 + ur**2) * np.sinh(state.r) ** N


def outside_cone_fraction(N: int, R: float, T: float, h: float, r0: float = 3.0, delta: float = 0.5, margin: float | None = None) -> float:
    """Energy outside ``[r0 - delta - T - m, r0 + delta + T + m]`` over the initial energy.

    The resolution margin ``m`` defaults to ``4 h``.
    """
    if T > R - (r0 + delta) - 1:
        raise ValueError("T too large: the wave would reach the absorbing layer")
    m = 4 * h if margin is None else margin
    start = evolve_wave(N, R, 0.0, h, r0, delta)
    e0 = float(np.sum(wave_energy_density(start, N)) * start.h)
    state = evolve_wave(N, R, T, h, r0, delta)
    dens = wave_energy_density(state, N)
    outside = (state.r < r0 - delta - T - m) | (state.r > r0 + delta + T + m)
    return float(np.sum(dens[outside]) * state.h) / e0


def wave_cone_check(N: int = 3, R: float = 8.0, T: float = 2.0, h: float = 1e-3, tol: float = 1e-6, refinements: int = 2) -> CheckReport:
    """Outside-cone energy at ``h`` plus the reduction factor under halving ``h``."""
    hs = [h * 2**j for j in range(refinements, -1, -1)]
    fracs = [outside_cone_fraction(N, R, T, hh) for hh in hs]
    factors = [a / b if b > 0 else math.inf for a, b in zip(fracs[:-1], fracs[1:])]
    ok = fracs[-1] <= tol and all(f >= 4 for f in factors)
    return CheckReport(
        "wave_cone", fracs[-1], 0.0, tol, ok, "finite propagation speed at most 1",
        {"h": hs, "fractions": fracs, "reduction_factors": factors},
    )


# ---------------------------------------------------------------------------
# scalar lemmas


def resolvent_derivative(c: complex):
    """``j``-th derivative of ``g(s) = 1/(s - c)``."""

    def g(j, s):
        return (-1) ** j * math.factorial(j) / (s - c) ** (j + 1)

    return g


def polynomial_derivative(coeffs):
    """``j``-th derivative of ``sum coeffs[i] s^i``."""
    poly = np.polynomial.Polynomial(coeffs)

    def g(j, s):
        return poly.deriv(j)(s) if j else poly(s)

    return g


def taylor_remainder(g, alpha: float, n_terms: int, x: float) -> complex:
    """``b_N = alpha^N/(N-1)! int_0^1 g^{(N)}(x + t alpha) t^{N-1} dt``."""

    def part(fn):
        val, _ = quad(lambda t: fn(g(n_terms, x + t * alpha) * t ** (n_terms - 1)), 0.0, 1.0, epsabs=1e-15, epsrel=1e-13)
        return val

    integral = part(lambda z: complex(z).real) + 1j * part(lambda z: complex(z).imag)
    return alpha**n_terms / math.factorial(n_terms - 1) * integral


def taylor_residual(g, alpha: float, n_terms: int, x: float) -> float:
    """``|g(x) - sum_{j<N} (-1)^j alpha^j/j! g^{(j)}(x+alpha) - (-1)^N b_N|``."""
    if n_terms < 1 or alpha <= 0:
        raise ValueError("need N >= 1 and alpha > 0")
    series = sum((-1) ** j * alpha**j / math.factorial(j) * g(j, x + alpha) for j in range(n_terms))
    b = taylor_remainder(g, alpha, n_terms, x)
    return abs(g(0, x) - series - (-1) ** n_terms * b)


def taylor_remainder_check(tol: float = 1e-8) -> CheckReport:
    """Three test functions, ``N in {1, 2, 4}``."""
    z = 1.0 + 0.5j
    cases = {
        "1/(s+1)": resolvent_derivative(-1.0),
        "1/(s-z^2)": resolvent_derivative(z * z),
        "cubic": polynomial_derivative([1.0, -2.0, 0.5, 3.0]),
    }
    worst, rows = 0.0, []
    for name, g in cases.items():
        for n in (1, 2, 4):
            res = taylor_residual(g, 1.0, n, 1.0)
            rows.append({"g": name, "N": n, "residual": res})
            worst = max(worst, res)
    return CheckReport.bound("taylor_remainder", worst, tol, "Taylor formula with integral remainder", cases=rows)


def lorentzian_fourier(xi: float, c: float) -> float:
    """``int e^{-i xi w} / (w^2 + c^2) dw`` by oscillatory quadrature."""
    if xi == 0:
        val, _ = quad(lambda w: 1 / (w * w + c * c), 0, np.inf, epsabs=0.0, epsrel=1e-12)
    else:
        val, _ = quad(lambda w: 1 / (w * w + c * c), 0, np.inf, weight="cos", wvar=abs(xi), epsabs=1e-13, limlst=100)
    return 2 * val


def fourier_decay_check(c: float = 2.0, gamma0: float = 1.0, eps0: float = 0.5, xi_grid=None, tol: float = 1e-6) -> CheckReport:
    """Compare with ``(pi/c) e^{-c|xi|}`` and test the exponential bound with ``C = pi/c``."""
    if not c > gamma0 / 2 + eps0:
        raise ValueError("need c > gamma0/2 + eps0")
    xi_grid = np.linspace(0.0, 10.0, 41) if xi_grid is None else np.asarray(xi_grid, dtype=float)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        num = np.array([lorentzian_fourier(x, c) for x in xi_grid])
    exact = math.pi / c * np.exp(-c * np.abs(xi_grid))
    err = float(np.max(np.abs(num - exact)))
    bound = math.pi / c * np.exp(-(gamma0 / 2 + eps0 / 2) * np.abs(xi_grid))
    holds = bool(np.all(np.abs(num) <= bound + tol))
    if err > tol and caught:
        warnings.warn(f"oscillatory quadrature reported {len(caught)} accuracy warnings", RuntimeWarning, stacklevel=2)
    return CheckReport(
        "fourier_decay", err, 0.0, tol, bool(err <= tol and holds), "Fourier transform decay on a strip",
        {"c": c, "bound_holds": holds, "quadrature_warnings": len(caught)},
    )


def symbol_weighted(z: complex, j: int, w):
    """``|g^{(j)}(w^2)| (1 + |w|)^j`` for ``g(s) = 1/(s - z^2)``."""
    w = np.asarray(w, dtype=complex)
    g = resolvent_derivative(z * z)
    return np.abs(g(j, w * w)) * (1 + np.abs(w)) ** j


def symbol_decay_check(z: complex = 1.0 + 1.0j, j_max: int = 4, strip: float | None = None, X: float = 200.0) -> CheckReport:
    """Grid sups of ``|g^{(j)}(w^2)| (1+|w|)^j`` over a strip that avoids ``+-z``.

    Finite sups with no larger values on the outer half of the grid reproduce
    the ``(1+|w|)^{-j}`` estimate.  For ``j = 1`` the grid sup is compared
    with a local optimiser started from the best grid point.
    """
    if z.imag == 0:
        raise ValueError("z must have nonzero imaginary part")
    strip = 0.8 * abs(z.imag) if strip is None else strip
    if strip >= abs(z.imag):
        raise ValueError("the strip must exclude the poles +-z")
    re = np.linspace(-X, X, 4001)
    im = np.linspace(-strip, strip, 41)
    W = re[None, :] + 1j * im[:, None]
    sups, tails = [], []
    outer = np.abs(re) >= X / 2
    for j in range(j_max + 1):
        vals = symbol_weighted(z, j, W)
        sups.append(float(vals[:, ~outer].max()))
        tails.append(float(vals[:, outer].max()))
    finite = all(math.isfinite(s) for s in sups + tails)
    bounded = all(t <= s for t, s in zip(tails, sups))
    # j = 1 analytic sup by local refinement
    vals = symbol_weighted(z, 1, W)
    i0, k0 = np.unravel_index(np.argmax(vals), vals.shape)

    def neg(v):
        x, y = v
        y = float(np.clip(y, -strip, strip))
        return -float(symbol_weighted(z, 1, x + 1j * y))

    opt = minimize(neg, [re[k0], im[i0]], method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
    exact = -opt.fun
    rel = abs(sups[1] - exact) / exact
    ok = bool(finite and bounded and rel <= 0.01)
    return CheckReport(
        "symbol_decay", rel, 0.0, 0.01, ok, "symbol estimates for g(w^2)",
        {"sups": sups, "outer_sups": tails, "j1_refined_sup": exact},
    )
