import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyperlp.profiles import Bump, Plateau, TensorProfile, mollifier, smoothstep


def _fd(f, x, order, h=1e-4):
    """Central difference of ``f(., order - 1)``."""
    return (f(x + h, order - 1) - f(x - h, order - 1)) / (2 * h)


def test_smoothstep_limits():
    u = np.array([-1.0, 0.0, 0.5, 1.0, 2.0])
    assert smoothstep(u) == pytest.approx([0.0, 0.0, 0.5, 1.0, 1.0])


@pytest.mark.parametrize("order", [1, 2, 3])
def test_smoothstep_derivatives_match_differences(order):
    u = np.linspace(0.1, 0.9, 17)
    assert smoothstep(u, order) == pytest.approx(_fd(smoothstep, u, order), rel=1e-5, abs=1e-6)


@pytest.mark.parametrize("order", [1, 2, 3])
def test_mollifier_derivatives_match_differences(order):
    u = np.linspace(-0.9, 0.9, 19)
    assert mollifier(u, order) == pytest.approx(_fd(mollifier, u, order), rel=1e-5, abs=1e-6)


def test_mollifier_support_and_peak():
    assert mollifier(np.array([0.0]))[0] == 1.0
    assert np.all(mollifier(np.array([-1.0, 1.0, 1.5])) == 0)


@given(st.floats(-5, 5), st.floats(2.5, 20.0))
def test_plateau_is_one_inside_zero_outside(lo, width):
    c = Plateau(lo, lo + width, 1.0)
    assert c(np.array([lo + 1.0, lo + width - 1.0, lo + width / 2])) == pytest.approx(1.0)
    assert np.all(c(np.array([lo - 0.5, lo + width + 0.5])) == 0)


def test_plateau_derivative_bound_uniform_in_width():
    # the rising ramp does not depend on the plateau length
    t = np.linspace(-1, 1, 201)
    short, long_ = Plateau(0.0, 2.0, 1.0), Plateau(0.0, 1e6, 1.0)
    for order in (1, 2):
        assert short(t, order) == pytest.approx(long_(t, order))


def test_plateau_rejects_narrow():
    with pytest.raises(ValueError):
        Plateau(0.0, 1.5, 1.0)


def test_tensor_profile_and_laplacian():
    b = TensorProfile((Bump(0.0, 1.0), Bump(0.2, 0.5)))
    xs = [np.array([0.1, -0.3]), np.array([0.25, 0.1])]
    direct = Bump(0.0, 1.0)(xs[0]) * Bump(0.2, 0.5)(xs[1])
    assert b(xs) == pytest.approx(direct)
    lap = -(Bump(0.0, 1.0)(xs[0], 2) * Bump(0.2, 0.5)(xs[1]) + Bump(0.0, 1.0)(xs[0]) * Bump(0.2, 0.5)(xs[1], 2))
    assert b.laplacian(xs) == pytest.approx(lap)
    assert b.box == ((-1.0, 1.0), (-0.3, 0.7))
