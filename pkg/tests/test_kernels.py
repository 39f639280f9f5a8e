import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlp import kernels as kn

# --- heat kernel ----------------------------------------------------------------


def test_heat_on_diagonal():
    assert kn.h3_heat(1.0, 0.0) == pytest.approx((4 * math.pi) ** -1.5 * math.exp(-1), rel=1e-14)


@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_heat_mass_is_one(t):
    assert kn.heat_mass(t) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("s, t", [(0.5, 0.5), (0.2, 1.3)])
def test_semigroup_at_diagonal(s, t):
    assert kn.semigroup_defect(s, t) <= 1e-4


def test_log_heat_finite_where_heat_underflows():
    assert np.isfinite(kn.log_h3_heat(0.01, 50.0))
    assert kn.h3_heat(0.01, 50.0) == 0.0


def test_heat_rejects_nonpositive_time():
    with pytest.raises(ValueError):
        kn.h3_heat(0.0, 1.0)


def test_ball_volume_small_radius():
    rho = 1e-3
    assert kn.ball_volume_h3(rho) == pytest.approx(4 / 3 * math.pi * rho**3, rel=1e-5)


# --- Gaussian bound -------------------------------------------------------------


def test_gaussian_bound_default_grid():
    rep = kn.gaussian_bound_check()
    assert rep.passed and rep.measured <= 8.0


def test_gaussian_bound_small_time_is_near_four():
    rep = kn.gaussian_bound_check(t_grid=np.geomspace(0.01, 0.1, 20))
    assert rep.passed and 4.0 <= rep.measured <= 4.5


def test_gaussian_bound_on_diagonal_row():
    t = np.geomspace(0.01, 10.0, 30)
    rep = kn.gaussian_bound_check(t_grid=t, r_grid=np.array([0.0]))
    # with r = 0 the bound reads h <= C1 / vol(B(sqrt t)) e^{sqrt(2t)}
    ratio = kn.h3_heat(t, 0.0) * kn.ball_volume_h3(np.sqrt(t)) * np.exp(-np.sqrt(2 * t))
    assert rep.details["C1"] == pytest.approx(1.01 * ratio.max(), rel=1e-12)


# --- resolvent ------------------------------------------------------------------


@pytest.mark.parametrize("m, xi, r", [(0.5, 1.0, 0.3), (1.0, 2.0, 1.0), (2.0, 4.0, 5.0), (2.0, 1.0, 0.0)])
def test_resolvent_quadrature_matches_bessel(m, xi, r):
    q = kn.resolvent_kernel(m, xi, r, "quad")
    b = kn.resolvent_kernel(m, xi, r, "bessel")
    assert q == pytest.approx(b, rel=1e-9)


@given(st.sampled_from([0.5, 1.0, 2.0]), st.sampled_from([1.0, 2.0, 4.0]), st.floats(0.05, 10.0), st.floats(0.01, 2.0))
def test_resolvent_decreasing_in_r(m, xi, r, dr):
    assert kn.resolvent_kernel(m, xi, r + dr, "bessel") < kn.resolvent_kernel(m, xi, r, "bessel")


@pytest.mark.parametrize("m", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("xi", [1.0, 2.0, 4.0])
def test_resolvent_mass(m, xi):
    assert kn.resolvent_mass(m, xi) == pytest.approx(xi ** (-2 * m), abs=1e-6)


def test_resolvent_rejects():
    with pytest.raises(ValueError):
        kn.resolvent_kernel(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        kn.resolvent_kernel(0.0, 1.0, 1.0)


# --- inequalities ---------------------------------------------------------------


def test_impo_examples():
    assert kn.impo_holds(1.0, 2.0, 1.0, 4.0)
    assert kn.impo_holds(3.0, 0.0, 0.7, 2.0)
    sigma, d, C2 = 1.3, 2.1, 4.0
    t = d / (2 * sigma * math.sqrt(C2))
    lhs = -(d**2) / (4 * C2 * t) - sigma**2 * t
    assert lhs == pytest.approx(-sigma * d / math.sqrt(C2), rel=1e-14)


@given(st.floats(1e-3, 1e3), st.floats(0, 1e3), st.floats(1e-4, 1e4), st.floats(1e-2, 1e2))
def test_impo_property(sigma, d, t, C2):
    assert kn.impo_holds(sigma, d, t, C2)


def test_impo_check_seeded():
    assert kn.impo_check(100_000, seed=7).measured == 0


def test_schur_diagonal_kernel_ratio_is_one():
    K = np.diag([1.0, 3.0, 2.0])
    w = np.array([1.0, 0.5, 1.0])
    assert kn.schur_constant(K, w, 1.0) == pytest.approx(2.0)
    vecs = list(np.eye(3))
    assert kn.schur_ratio(K, w, 2.0, 2.0, 1.0, vecs) == pytest.approx(1.0)


def test_schur_bound_random_kernels():
    rep = kn.schur_bound_check(100, seed=1)
    assert rep.passed and rep.details["max_ratio"] <= 1.0


def test_schur_rejects_bad_exponents():
    with pytest.raises(ValueError):
        kn.schur_ratio(np.eye(2), np.ones(2), 2.0, 3.0, 1.0, [np.ones(2)])


# --- volume growth --------------------------------------------------------------


def test_volume_rate_N3():
    assert 2.99 <= kn.log_ball_volume(3, 40.0) / 40.0 <= 3.01


@pytest.mark.parametrize("R", [0.5, 3.0, 40.0])
def test_log_ball_volume_closed_form_N1(R):
    assert kn.log_ball_volume(1, R) == pytest.approx(math.log(2 * math.pi * (math.cosh(R) - 1)), rel=1e-12)


def test_volume_rate_N1_tends_to_one():
    assert kn.log_ball_volume(1, 2000.0) / 2000.0 == pytest.approx(1.0, abs=1e-2)


@pytest.mark.parametrize("N", [1, 2, 3, 5])
def test_entropy_slope_bounded_by_growth_rate(N):
    assert kn.volume_entropy_slope(N) <= N + 1e-2
    assert kn.volume_growth(N).details["bound_holds"]


# --- waves ----------------------------------------------------------------------


def test_wave_fraction_zero_at_start():
    assert kn.outside_cone_fraction(3, 8.0, 0.0, 1e-2) == 0.0


def test_wave_cone_refinement():
    rep = kn.wave_cone_check(N=3, R=8.0, T=2.0, h=1e-3)
    assert rep.passed
    assert all(f >= 4 for f in rep.details["reduction_factors"])


def test_wave_rejects_long_time():
    with pytest.raises(ValueError):
        kn.outside_cone_fraction(3, 6.0, 3.0, 1e-2)


# --- scalar lemmas --------------------------------------------------------------


def test_taylor_first_order_identity():
    g = kn.resolvent_derivative(-1.0)
    assert kn.taylor_remainder(g, 1.0, 1, 1.0) == pytest.approx(g(0, 2.0) - g(0, 1.0), rel=1e-12)


def test_taylor_exact_for_low_degree_polynomial():
    g = kn.polynomial_derivative([1.0, -2.0, 0.5])
    assert abs(kn.taylor_remainder(g, 0.7, 4, 0.3)) <= 1e-15
    assert kn.taylor_residual(g, 0.7, 4, 0.3) <= 1e-14


def test_taylor_resolvent_example():
    assert kn.taylor_residual(kn.resolvent_derivative(-1.0), 1.0, 4, 1.0) <= 1e-10


def test_taylor_check():
    assert kn.taylor_remainder_check().passed


@pytest.mark.parametrize("xi", [0.0, 1.0, 3.0])
def test_lorentzian_fourier(xi):
    assert kn.lorentzian_fourier(xi, 2.0) == pytest.approx(math.pi / 2 * math.exp(-2 * xi), abs=1e-6)


def test_fourier_check():
    assert kn.fourier_decay_check().passed
    with pytest.raises(ValueError):
        kn.fourier_decay_check(c=0.5)


def test_symbol_check():
    rep = kn.symbol_decay_check(j_max=4)
    assert rep.passed
    assert all(math.isfinite(s) for s in rep.details["sups"])


def test_symbol_rejects_real_z():
    with pytest.raises(ValueError):
        kn.symbol_decay_check(z=1.0 + 0j)
