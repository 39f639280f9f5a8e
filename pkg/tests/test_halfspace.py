import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from hyperlp import halfspace as hs
from hyperlp.acceptance import random_form
from hyperlp.halfspace import BasisForm, Monomial, TemplateForm
from hyperlp.profiles import Bump, Plateau, TensorProfile
from hyperlp.regions import RegionSpec, boundary_point

A, B = BasisForm.A, BasisForm.B


def _points(N, n=50, seed=0):
    rng = np.random.default_rng(seed)
    return np.exp(rng.uniform(-2, 2, n)), [rng.uniform(-1, 1, n) for _ in range(N)]


def _max_norm(form, N):
    y, xs = _points(N)
    return float(np.max(form.pointwise_norm(y, xs))) if len(form) else 0.0


def _only_term(form):
    assert len(form) == 1
    return next(iter(form))


# --- connection ---------------------------------------------------------------


@pytest.mark.parametrize("basis", [A((1,)), B((1, 2))])
def test_covariant_derivative_in_y(basis):
    b, mono, const = _only_term(hs.covariant_derivative(basis, 0, 3))
    assert b == basis and mono.mu == -1 and const == 2


def test_covariant_derivative_absent_index_vanishes():
    assert len(hs.covariant_derivative(B((2,)), 1, 3)) == 0


def test_covariant_derivative_of_dy_wedge():
    b, mono, const = _only_term(hs.covariant_derivative(A(()), 2, 3))
    assert b == B((2,)) and mono.mu == -1 and const == -1


# --- d and delta --------------------------------------------------------------


def test_d_of_y_dx1():
    b, mono, const = _only_term(hs.exterior_derivative(TemplateForm.single(3, B((1,)), Monomial(mu=1))))
    assert b == A((1,)) and mono.mu == 0 and const == 1


def test_d_of_constant_form_vanishes():
    assert len(hs.exterior_derivative(TemplateForm.single(3, B((1, 2))))) == 0


def test_d_of_form_depending_on_own_coordinate_vanishes():
    form = TemplateForm.single(3, B((1,)), Monomial(xi=(0.7, 0.0, 0.0)))
    assert len(hs.exterior_derivative(form)) == 0


def test_codifferential_of_pure_power_dx():
    assert len(hs.codifferential(TemplateForm.single(3, B((1, 2)), Monomial(mu=2)))) == 0


@pytest.mark.parametrize("mu", [0.5, 2.0, -1.5 + 0.3j])
def test_codifferential_of_dy_wedge(mu):
    b, mono, const = _only_term(hs.codifferential(TemplateForm.single(3, A((1,)), Monomial(mu=mu))))
    assert b == B((1,)) and mono.mu == pytest.approx(mu + 1) and const == pytest.approx(-mu)


@pytest.mark.parametrize("N, k", [(3, 1), (3, 2), (4, 2), (5, 1)])
def test_codifferential_annihilates_critical_power(N, k):
    I = tuple(range(1, k))
    assert len(hs.codifferential(TemplateForm.single(N, A(I), Monomial(mu=N + 1 - 2 * k)))) == 0


def test_codifferential_rejects_functions():
    with pytest.raises(ValueError):
        hs.codifferential(TemplateForm.single(3, B(())))


# --- Laplacian ----------------------------------------------------------------


@given(st.integers(1, 6), st.data(), st.complex_numbers(max_magnitude=5))
def test_laplacian_of_pure_power(N, data, mu):
    k = data.draw(st.integers(0, N))
    form = TemplateForm.single(N, B(tuple(range(1, k + 1))), Monomial(mu=mu))
    expected = -mu * (mu - N + 2 * k)
    for method in ("product", "hodge"):
        assert hs.formal_eigenvalue(form, method) == pytest.approx(expected, abs=1e-12 * (1 + abs(expected)))


def test_laplacian_harmonic_power():
    assert len(hs.laplacian(TemplateForm.single(3, B((1,)), Monomial(mu=1)))) == 0


def test_laplacian_dy_wedge_example():
    b, mono, const = _only_term(hs.laplacian(TemplateForm.single(3, A((1,)), Monomial(mu=2))))
    assert b == A((1,)) and mono.mu == 2 and const == pytest.approx(-6)


def test_formal_eigenvalue_rejects_non_eigenform():
    form = TemplateForm.single(3, B(()), Monomial(mu=1, kappa=-1.0))
    with pytest.raises(ValueError):
        hs.formal_eigenvalue(form)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_product_and_hodge_laplacians_agree(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 4))
    k = int(rng.integers(0, N + 2))
    w = random_form(N, k, rng) if k else _random_function(N, rng)
    diff = hs.laplacian(w) - hs.laplacian(w, method="hodge")
    assert _max_norm(diff, N) <= 1e-9 * max(1.0, _max_norm(hs.laplacian(w), N))


def _random_function(N, rng):
    mono = Monomial(mu=rng.uniform(-1, 1), c=Plateau(-1.5, 1.5, 1.0), b=TensorProfile.bump(N), xi=tuple(rng.uniform(-1, 1, N)))
    return TemplateForm.single(N, B(()), mono, complex(*rng.standard_normal(2)))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_d_squared_and_delta_squared_vanish(seed):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 4))
    k = int(rng.integers(1, N + 1))
    w = random_form(N, k, rng)
    dw = hs.exterior_derivative(w)
    if dw.degree <= N:
        assert _max_norm(hs.exterior_derivative(dw), N) <= 1e-12 * max(1.0, _max_norm(dw, N))
    if k >= 2:
        dl = hs.codifferential(w)
        assert _max_norm(hs.codifferential(dl), N) <= 1e-12 * max(1.0, _max_norm(dl, N))


# --- template forms -----------------------------------------------------------


def test_template_form_validation():
    with pytest.raises(ValueError):
        TemplateForm(3, 2, {(B((1,)), Monomial()): 1.0})
    with pytest.raises(ValueError):
        TemplateForm.single(2, B((3,)))
    with pytest.raises(ValueError):
        BasisForm((2, 1))


def test_pointwise_norm_scaling():
    form = TemplateForm.single(2, A((1,)), Monomial(), 3.0)
    y = np.array([0.5, 2.0])
    assert form.pointwise_norm(y, [np.zeros(2), np.zeros(2)]) == pytest.approx(3 * y**2)


# --- quadrature ---------------------------------------------------------------


@pytest.mark.parametrize("N, p", [(1, 1.0), (2, 1.5), (2, 2.0), (1, 3.0)])
def test_lp_norm_separable_closed_form(N, p):
    c = Plateau(-1.5, 2.0, 1.0)
    bump = Bump(0.0, 1.0)
    form = TemplateForm.single(N, B(()), Monomial(mu=N / p, c=c, b=TensorProfile((bump,) * N)))
    ct, _ = quad(lambda t: float(c(t)) ** p, -1.5, 2.0, epsabs=0, epsrel=1e-13, points=[-0.5, 1.0])
    bx, _ = quad(lambda x: float(bump(x)) ** p, -1, 1, epsabs=0, epsrel=1e-13)
    exact = (ct * bx**N) ** (1 / p)
    grid = hs.QuadratureGrid.covering(form, order=10)
    assert hs.lp_norm(form, p, grid) == pytest.approx(exact, rel=1e-8)


def test_lp_norm_of_zero_form():
    assert hs.lp_norm(TemplateForm.zero(3, 1), 2.0, hs.QuadratureGrid(-1, 1)) == 0.0


def test_inner_product_matches_l2_norm():
    rng = np.random.default_rng(3)
    w = random_form(2, 1, rng, terms=2)
    grid = hs.QuadratureGrid.covering(w)
    assert hs.inner_product(w, w, grid).real == pytest.approx(hs.lp_norm(w, 2.0, grid) ** 2, rel=1e-10)


def test_grid_coverage_warning():
    form = TemplateForm.single(1, B(()), Monomial(mu=1, c=Plateau(-2, 2, 1.0), b=TensorProfile.bump(1)))
    with pytest.warns(hs.GridCoverageWarning):
        hs.lp_norm(form, 1.0, hs.QuadratureGrid(-1.0, 1.0))


def test_covering_requires_compact_support():
    with pytest.raises(ValueError):
        hs.QuadratureGrid.covering(TemplateForm.single(1, B(()), Monomial(mu=1)))


# --- approximate eigenforms ----------------------------------------------------


@given(st.integers(1, 6), st.data(), st.sampled_from([1.0, 1.25, 1.5, 2.0]), st.floats(-5, 5))
def test_weyl_eigenvalue_on_boundary(N, data, p, s):
    k = data.draw(st.integers(0, (N + 1) // 2))
    spec = RegionSpec(N, k, p)
    assert hs.weyl_eigenvalue(spec, s) == pytest.approx(boundary_point(spec, s), abs=1e-10)


@pytest.mark.parametrize("n, p", [(2, 1.0), (3, 1.5)])
def test_weyl_form_support(n, p):
    omega = hs.weyl_form(n, RegionSpec(3, 1, p), 0.5)
    lo, hi = _only_term(omega)[1].t_support
    assert lo == pytest.approx(-(n ** (3 * p))) and hi == pytest.approx(math.log(n))


def test_weyl_norm_growth_and_monotonicity():
    spec = RegionSpec(2, 0, 1.0)
    big = hs.weyl_form(4, spec, 0.0)
    grid = hs.QuadratureGrid.covering(big)
    bx, _ = quad(lambda x: float(Bump()(x)), -1, 1)
    norms = [hs.lp_norm(hs.weyl_form(n, spec, 0.0), 1.0, grid) for n in (2, 3, 4)]
    assert norms[0] <= norms[1] <= norms[2]
    for n, v in zip((2, 3, 4), norms):
        assert v / n**3 >= 0.5 * bx**2


def test_weyl_quotient_small_n_decreases():
    spec = RegionSpec(2, 0, 1.0)
    q2, q4 = (hs.weyl_quotient(n, spec, 0.0) for n in (2, 4))
    assert 0 <= q4 < q2


def test_weyl_form_rejects():
    with pytest.raises(ValueError):
        hs.weyl_form(4, RegionSpec(3, 0, 3.0), 0.0)
    with pytest.raises(ValueError):
        hs.weyl_form(1, RegionSpec(3, 0, 1.0), 0.0)


# --- harmonic middle-degree form ------------------------------------------------


@pytest.mark.parametrize("nu, j, I, N", [(1.0, 1, (2,), 3), (2.5, 3, (1,), 3), (0.5, 2, (1, 4), 5)])
def test_middle_harmonic_is_closed_and_coclosed(nu, j, I, N):
    phi = hs.middle_harmonic(nu, j, I, N)
    for res in (hs.exterior_derivative(phi), hs.codifferential(phi), hs.laplacian(phi), hs.laplacian(phi, method="hodge")):
        assert _max_norm(res, N) <= 1e-10


def test_middle_harmonic_square_integrable_in_y():
    phi = hs.middle_harmonic(1.0, 1, (2,), 3)
    # |phi|^2 = 2 y^4 e^{-2y}, so the weighted integral is 1
    assert hs.y_integral(phi, 2.0, [0.3, -0.2, 0.5]) == pytest.approx(1.0, rel=1e-8)


@pytest.mark.parametrize("args", [(1.0, 1, (2,), 4), (0.0, 1, (2,), 3), (1.0, 1, (1,), 3), (1.0, 1, (), 3)])
def test_middle_harmonic_rejects(args):
    with pytest.raises(ValueError):
        hs.middle_harmonic(*args)
