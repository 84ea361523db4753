from __future__ import annotations

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import eigh_tridiagonal

from tone import oracles
from tone import spectrum as sp
from tone.errors import DomainError

# Dirichlet eigenvalues of geodesic disks in H^2(-1): 1/4 + nu^2 with nu the
# first zero of the conical function P_{-1/2 + i nu}(cosh T) (mpmath).
H2_DISK = {1.0: 6.11308181971164858408, 10.0: 0.328270761683167798032, 30.0: 0.260033920005587208550}


def disk_problem():
    return sp.SturmLiouvilleProblem(0.0, 1.0, weight=lambda t: t, left="neumann")


def interval_problem():
    return sp.SturmLiouvilleProblem(0.0, math.pi, weight=lambda t: np.ones_like(t))


def test_bessel_zero_oracle():
    # mpmath besseljzero(0, 1)
    assert oracles.bessel_j0_first_zero() == pytest.approx(2.40482555769577276862, rel=1e-15)


def test_disk_eigenvalue():
    lam, _ = sp.richardson_extrapolate(sp.bottom_eigenvalue(disk_problem(), 512), sp.bottom_eigenvalue(disk_problem(), 1024))
    assert lam == pytest.approx(5.78318596294678452118, abs=1e-4)


def test_interval_eigenvalue():
    lam, err = sp.richardson_extrapolate(sp.bottom_eigenvalue(interval_problem(), 256), sp.bottom_eigenvalue(interval_problem(), 512))
    assert lam == pytest.approx(1.0, abs=1e-6)
    assert err > 0


def test_richardson_exact_on_h2_model():
    lam, err = sp.richardson_extrapolate(2.0 + 3.0 * 0.01, 2.0 + 3.0 * 0.0025)
    assert lam == pytest.approx(2.0, rel=1e-15) and err == pytest.approx(0.0225)


@pytest.mark.parametrize("T", sorted(H2_DISK))
def test_h2_disk_against_legendre_oracle(tg_h2, T):
    res = sp.tone_of_revolution_surface(tg_h2.revolution, [T], 4096)
    assert res.extrapolated == pytest.approx(H2_DISK[T], rel=1e-8)


def test_plane_disks_scale(tg_flat):
    j = oracles.bessel_j0_first_zero()
    res = sp.tone_of_revolution_surface(tg_flat.revolution, [1.0, 5.0], 1024)
    np.testing.assert_allclose(res.lambda1, [j**2, (j / 5) ** 2], rtol=1e-7)


def test_catenoid_tone(hcat):
    res = sp.tone_of_revolution_surface(hcat.revolution, (10.0, 20.0, 30.0), 2048)
    assert abs(res.extrapolated / 0.25 - 1) < 0.02
    assert list(res.lambda1) == sorted(res.lambda1, reverse=True)
    assert min(res.lambda1) >= 0.25


def test_h2_sequence_decreases_towards_quarter(tg_h2):
    res = sp.tone_of_revolution_surface(tg_h2.revolution, (10.0, 20.0, 30.0), 2048)
    assert res.lambda1[0] > res.lambda1[1] > res.lambda1[2] > 0.25
    assert res.extrapolated == pytest.approx(0.25, abs=0.005)
    assert abs(res.lambda1[2] / 0.25 - 1) < 0.05


def test_mesh_order(tg_h2):
    prob = sp.radial_problem(tg_h2.revolution, 10.0)
    a, b, c = (sp.bottom_eigenvalue(prob, N) for N in (256, 512, 1024))
    assert abs(a - b) <= 4 * abs(b - c) * 1.1
    assert abs(a - b) >= 3 * abs(b - c)


def test_bisection_matches_lapack(hcat):
    d, e = sp.discretize(sp.radial_problem(hcat.revolution, 10.0), 1024)
    ref = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, 0))[0]
    assert sp.smallest_eigenvalue_tridiagonal(d, e) == pytest.approx(ref, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=3, max_size=40), st.data())
def test_bisection_matches_lapack_random(diag, data):
    off = data.draw(st.lists(st.floats(0.01, 3), min_size=len(diag) - 1, max_size=len(diag) - 1))
    d, e = np.array(diag), -np.array(off)
    ref = eigh_tridiagonal(d, e, eigvals_only=True, select="i", select_range=(0, 0))[0]
    assert sp.smallest_eigenvalue_tridiagonal(d, e) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_potential_term_shifts_spectrum():
    prob = sp.SturmLiouvilleProblem(0.0, math.pi, weight=lambda t: np.ones_like(t), potential=lambda t: np.full_like(t, 2.0))
    assert sp.bottom_eigenvalue(prob, 512) == pytest.approx(3.0, abs=1e-4)


def test_truncation_extrapolation_recovers_model():
    T = np.array([10.0, 20.0, 30.0])
    lam, err = sp.extrapolate_truncation(T, 0.25 + 1.0 / T**2 - 2.0 / T**3)
    assert lam == pytest.approx(0.25, rel=1e-13)
    assert sp.extrapolate_truncation([30.0], [0.26]) == (0.26, 0.0)


def test_result_json(hcat):
    res = sp.tone_of_revolution_surface(hcat.revolution, (10.0, 20.0), 256, config={"k": 1})
    d = json.loads(res.to_json())
    assert set(d) >= {"geometry", "truncations", "lambda1", "extrapolated", "error", "config", "version"}


@pytest.mark.parametrize(
    "bad",
    [
        lambda: sp.SturmLiouvilleProblem(1.0, 0.0, weight=np.ones_like),
        lambda: sp.SturmLiouvilleProblem(0.0, 1.0, weight=np.ones_like, left="robin"),
        lambda: sp.SturmLiouvilleProblem(0.0, 1.0),
        lambda: sp.bottom_eigenvalue(disk_problem(), 32),
        lambda: sp.bottom_eigenvalue(sp.SturmLiouvilleProblem(-1.0, 1.0, weight=lambda t: t), 128),
    ],
)
def test_domain_errors(bad):
    with pytest.raises(DomainError):
        bad()


def test_nonpositive_truncation_rejected(hcat):
    with pytest.raises(DomainError):
        sp.radial_problem(hcat.revolution, -1.0)
