import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperlp import middle as md
from hyperlp.middle import MiddleFamily


def test_wk_vanishes_at_origin():
    assert md.wk(0.0, 4.0) == 0.0


def test_wk_asymptotics():
    r = np.array([30.0, 40.0])
    assert md.wk(r, 4.0) * np.exp(r / 2) == pytest.approx(2.0, rel=1e-10)


def test_lowest_family_eigenvalue():
    assert MiddleFamily.lowest(3, 2.0).lam == 4.0


@pytest.mark.parametrize("N, expected", [(3, 1.5), (5, 5 / 3), (1, 1.0)])
def test_threshold(N, expected):
    assert md.threshold(N) == pytest.approx(expected)


def test_threshold_tends_to_two():
    assert 2 - md.threshold(10_001) < 1e-3


@given(st.sampled_from([1, 3, 5, 7, 9]))
def test_exponent_vanishes_at_threshold(N):
    assert md.exponent(N, md.threshold(N)) == pytest.approx(0.0, abs=1e-14)


@given(st.sampled_from([3, 5, 7]), st.floats(1.0, 4.0), st.floats(5.0, 40.0))
def test_log_integrand_slope_is_derivative(N, p, r):
    fam = MiddleFamily.lowest(N, p)
    h = 1e-5
    fd = (md.log_integrand(r + h, fam) - md.log_integrand(r - h, fam)) / (2 * h)
    assert float(md.log_integrand_slope(r, fam)) == pytest.approx(float(fd), abs=1e-6)


@pytest.mark.parametrize("N", [3, 5])
@pytest.mark.parametrize("p", [1.0, 1.5, 2.0, 3.0])
def test_exponent_law(N, p):
    fam = MiddleFamily.lowest(N, p)
    assert float(md.log_integrand_slope(30.0, fam)) == pytest.approx(md.exponent(N, p), abs=1e-3)
    assert md.measured_exponent(fam) == pytest.approx(md.exponent(N, p), abs=1e-3)


def test_tail_converges_for_p2():
    fam = MiddleFamily(3, 4.0, 2.0)
    a, b, c = (md.lp_tail(fam, R).value for R in (10.0, 20.0, 40.0))
    assert c - b < 1e-3 * (b - a)
    assert md.converges(fam)


def test_tail_diverges_for_p1():
    fam = MiddleFamily(3, 4.0, 1.0)
    t = md.lp_tail(fam, 20.0)
    assert t.exponent_estimate == pytest.approx(1.0, abs=1e-3)
    assert md.lp_tail(fam, 30.0).value > math.exp(9) * t.value
    assert not md.converges(fam)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([1.0, 9.0, 16.0, 30.0]))
def test_detected_threshold_independent_of_lambda(lam):
    assert md.detect_threshold(3, lam) == pytest.approx(1.5, abs=0.02)


@pytest.mark.parametrize("N", [3, 5])
def test_detected_threshold(N):
    assert md.detect_threshold(N) == pytest.approx(md.threshold(N), abs=0.02)


def test_detect_threshold_needs_sign_change():
    with pytest.raises(ValueError):
        md.detect_threshold(3, lo=1.6, hi=2.0)


def test_pairing_divergence_grows_like_log():
    j3, j4 = md.pairing_divergence(4.0, 1e3), md.pairing_divergence(4.0, 1e4)
    assert j4 - j3 == pytest.approx(math.log(10), rel=0.05)
    assert md.pairing_divergence(4.0, 2e4) - j4 == pytest.approx(math.log(2), rel=1e-3)


@given(st.floats(2.0, 100.0), st.floats(0.1, 50.0))
def test_pairing_divergence_monotone(R, dR):
    assert md.pairing_divergence(4.0, R + dR) > md.pairing_divergence(4.0, R)


@pytest.mark.parametrize("args", [(4, 4.0, 2.0), (3, 0.2, 2.0), (3, 4.0, 0.5)])
def test_family_rejects(args):
    with pytest.raises(ValueError):
        MiddleFamily(*args)
