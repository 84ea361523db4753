from __future__ import annotations

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tone.errors import DomainError
from tone.spaceform import SpaceForm, c_kappa, log_s_kappa, log_sinh, s_kappa, unit_sphere_volume

kappas = st.floats(min_value=-9.0, max_value=-0.01)
radii = st.floats(min_value=0.01, max_value=8.0)


def test_s_kappa_hyperbolic_unit():
    assert s_kappa(-1.0, 1.0) == pytest.approx(math.sinh(1.0), rel=1e-15)


def test_s_kappa_flat_is_identity():
    assert s_kappa(0.0, 2.5) == 2.5


def test_c_kappa_flat():
    assert c_kappa(0.0, 4.0) == 0.25


def test_c_kappa_large_radius_limit():
    assert c_kappa(-4.0, 50.0) == pytest.approx(2.0, rel=1e-15)


def test_log_sinh_against_mpmath():
    # mpmath reference values, 30 digits
    assert log_sinh(50.0) == pytest.approx(49.3068528194400546905827678785, rel=1e-15)
    assert log_sinh(1e-3) == pytest.approx(-6.90775511231547594094251051928, rel=1e-14)


def test_log_sinh_no_overflow():
    assert log_sinh(1e4) == pytest.approx(1e4 - math.log(2.0), rel=1e-15)


def test_unit_sphere_volumes():
    assert unit_sphere_volume(2) == pytest.approx(2 * math.pi)
    assert unit_sphere_volume(3) == pytest.approx(4 * math.pi)


def test_ball_volume_h2_closed_form():
    sf = SpaceForm(-1.0, 2)
    assert sf.ball_volume(3.0) == pytest.approx(2 * math.pi * (math.cosh(3.0) - 1), rel=1e-14)


def test_ball_volume_h3_against_mpmath():
    # pi (sinh 4 - 4), evaluated with mpmath
    assert SpaceForm(-1.0, 3).ball_volume(2.0) == pytest.approx(73.1674327692111354831137714055, rel=1e-12)


def test_ball_volume_h4_against_mpmath_quadrature():
    assert SpaceForm(-1.0, 4).ball_volume(1.5) == pytest.approx(52.3787038186474831303909524867, rel=1e-12)


def test_ball_volume_rescaled_curvature():
    assert SpaceForm(-4.0, 5).ball_volume(0.7) == pytest.approx(2.22261455371253516836704166545, rel=1e-12)


def test_log_ball_volume_large_radius():
    # log(pi (sinh 600 - 600)), mpmath
    assert SpaceForm(-1.0, 3).log_ball_volume(300.0) == pytest.approx(600.45158270528945486472619523, rel=1e-13)


def test_flat_ball_volume():
    assert SpaceForm(0.0, 3).ball_volume(2.0) == pytest.approx(4 * math.pi * 8 / 3)


def test_vectorized_matches_scalar():
    sf = SpaceForm(-1.0, 3)
    r = np.array([0.5, 1.0, 2.0])
    np.testing.assert_allclose(sf.ball_volume(r), [sf.ball_volume(x) for x in r], rtol=1e-15)
    np.testing.assert_allclose(sf.log_ball_volume(r), np.log(sf.ball_volume(r)), rtol=1e-12)


@pytest.mark.parametrize("bad", [lambda: SpaceForm(1.0, 2), lambda: SpaceForm(-1.0, 1), lambda: s_kappa(-1.0, -1.0), lambda: c_kappa(-1.0, 0.0)])
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bad()


@settings(max_examples=60, deadline=None)
@given(kappas, radii)
def test_c_kappa_is_log_derivative(kappa, t):
    h = 1e-5 * t
    fd = (log_s_kappa(kappa, t + h) - log_s_kappa(kappa, t - h)) / (2 * h)
    assert c_kappa(kappa, t) == pytest.approx(fd, rel=1e-6)


@settings(max_examples=40, deadline=None)
@given(kappas, radii, st.integers(min_value=2, max_value=5))
def test_ball_volume_is_integral_of_sphere_volume(kappa, R, n):
    sf = SpaceForm(kappa, n)
    ref = mp.quad(lambda t: sf.omega * (mp.sinh(mp.sqrt(-kappa) * t) / mp.sqrt(-kappa)) ** (n - 1), [0, R])
    assert sf.ball_volume(R) == pytest.approx(float(ref), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(radii, st.integers(min_value=2, max_value=4))
def test_flat_limit_continuity(t, n):
    near, flat = SpaceForm(-1e-10, n), SpaceForm(0.0, n)
    assert near.s(t) == pytest.approx(flat.s(t), rel=1e-8)
    assert near.ball_volume(t) == pytest.approx(flat.ball_volume(t), rel=1e-8)


@settings(max_examples=40, deadline=None)
@given(kappas, st.floats(min_value=0.01, max_value=5.0), st.floats(min_value=0.01, max_value=5.0))
def test_ball_volume_increasing(kappa, r1, r2):
    sf = SpaceForm(kappa, 3)
    lo, hi = sorted((r1, r2))
    assert sf.ball_volume(lo) <= sf.ball_volume(hi)
