from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tone import geometry as geo
from tone.errors import DomainError, GeometryError

H3 = geo.AmbientSpace.hyperbolic(3, -1.0)


def hyperboloid_point(a, b, c):
    """Point of H^3(-1) from hyperbolic 'spherical' coordinates."""
    v = np.array([math.cos(b) * math.cos(c), math.sin(b) * math.cos(c), math.sin(c)])
    return np.concatenate([[math.cosh(a)], math.sinh(a) * v])


def poincare_distance(x, y):
    """Independent oracle: distance computed in the Poincare ball model."""
    px, py = x[1:] / (1 + x[0]), y[1:] / (1 + y[0])
    num = 2 * np.dot(px - py, px - py)
    return math.acosh(1 + num / ((1 - np.dot(px, px)) * (1 - np.dot(py, py))))


def plane_chart():
    return geo.ImmersedGeometry(
        name="plane",
        n=2,
        ambient=geo.AmbientSpace.euclidean(3),
        domain=((-10.0, 10.0), (-10.0, 10.0)),
        base_point=(0.0, 0.0),
        embed=lambda u: np.stack([u[..., 0], u[..., 1], np.zeros_like(u[..., 0])], axis=-1),
    )


def test_euclidean_distance_pythagoras():
    amb = geo.AmbientSpace.euclidean(3)
    assert amb.distance(np.array([3.0, 4.0, 0.0]), np.zeros(3)) == 5.0


def test_unit_speed_geodesic_distance():
    p = np.array([1.0, 0.0, 0.0, 0.0])
    x = np.array([math.cosh(1.0), math.sinh(1.0), 0.0, 0.0])
    assert H3.distance(x, p) == pytest.approx(1.0, rel=1e-15)


def test_distance_against_poincare_model():
    x = hyperboloid_point(1.3, 0.4, -0.2)
    y = hyperboloid_point(2.1, -1.1, 0.7)
    assert H3.distance(x, y) == pytest.approx(poincare_distance(x, y), rel=1e-13)


def test_distance_far_apart_is_finite():
    x = hyperboloid_point(150.0, 0.0, 0.0)
    y = hyperboloid_point(150.0, math.pi, 0.0)
    assert H3.distance(x, y) == pytest.approx(300.0, rel=1e-12)


def test_distance_curvature_scaling():
    amb = geo.AmbientSpace.hyperbolic(2, -4.0)
    p = np.array([0.5, 0.0, 0.0])
    x = np.array([math.cosh(1.0) / 2, math.sinh(1.0) / 2, 0.0])
    assert amb.distance(x, p) == pytest.approx(0.5, rel=1e-14)


def test_projection_rejects_far_points():
    with pytest.raises(GeometryError):
        H3.project(np.array([2.0, 0.0, 0.0, 0.0]))


def test_projection_repairs_small_drift():
    x = hyperboloid_point(3.0, 0.2, 0.1) * (1 + 1e-6)
    assert H3.constraint_violation(H3.project(x)) <= 1e-12


@pytest.mark.parametrize(
    "kind,m,kappa", [("hyperbolic", 3, 0.0), ("euclidean", 3, -1.0), ("sphere", 3, 1.0), ("euclidean", 1, 0.0)]
)
def test_ambient_validation(kind, m, kappa):
    with pytest.raises(DomainError):
        geo.AmbientSpace(kind, m, kappa)


@settings(max_examples=80, deadline=None)
@given(
    st.tuples(*[st.floats(0.0, 6.0), st.floats(-3.0, 3.0), st.floats(-1.5, 1.5)] * 3),
)
def test_triangle_inequality_and_symmetry(c):
    x, y, z = (hyperboloid_point(*c[i : i + 3]) for i in (0, 3, 6))
    dxy, dyz, dxz = H3.distance(x, y), H3.distance(y, z), H3.distance(x, z)
    assert dxz <= dxy + dyz + 1e-9
    assert dxy == H3.distance(y, x)
    assert H3.distance(x, x) == 0.0


def test_plane_area_element_and_sff():
    g = plane_chart()
    u = np.array([[0.3, -1.2], [4.0, 2.0]])
    np.testing.assert_allclose(geo.area_element(g, u), 1.0, atol=1e-9)
    np.testing.assert_allclose(geo.second_fundamental_form_norm(g, u), 0.0, atol=1e-5)


def test_catenoid_area_element(ecat):
    t = np.linspace(-2.0, 2.0, 9)
    u = np.stack([t, np.full_like(t, 0.7)], axis=-1)
    np.testing.assert_allclose(geo.area_element(ecat, u), np.cosh(t) ** 2, rtol=1e-13)


def test_catenoid_waist_sff(ecat):
    assert geo.second_fundamental_form_norm(ecat, np.array([0.0, 0.0])) == pytest.approx(math.sqrt(2), rel=1e-13)
    assert geo.mean_curvature_norm(ecat, np.array([1.3, 2.0])) == pytest.approx(0.0, abs=1e-12)


def test_totally_geodesic_area_and_sff(tg_h2):
    r = np.array([0.5, 2.0, 7.0])
    u = np.stack([r, np.full_like(r, 1.0)], axis=-1)
    np.testing.assert_allclose(geo.area_element(tg_h2, u), np.sinh(r), rtol=1e-10)
    np.testing.assert_allclose(geo.second_fundamental_form_norm(tg_h2, u), 0.0, atol=1e-10)


def test_hyperboloid_constraint_on_chart(hcat, tg_h2):
    for g in (hcat, tg_h2):
        u, _ = geo.gauss_legendre_box(g.truncation(20.0), 24)
        assert np.max(g.ambient.constraint_violation(g.points(u))) <= 1e-10


@pytest.mark.parametrize("fixture", ["ecat", "hcat"])
def test_gauss_equation_agrees_with_direct_sff(fixture, request):
    g = request.getfixturevalue(fixture)
    u, _ = geo.gauss_legendre_box(((-2.0, 2.0), (0.0, 2 * math.pi)), 8)
    direct = geo.second_fundamental_form_norm(g, u)
    gauss = geo.gauss_equation_norm(g, u)
    np.testing.assert_allclose(gauss, direct, rtol=1e-4)


def test_extrinsic_distance_from_base(ecat):
    # the waist circle point at angle pi is a diameter away from the base point
    assert geo.extrinsic_distance(ecat, np.array([0.0, math.pi])) == pytest.approx(2.0, rel=1e-14)


def test_gauss_legendre_box_integrates_polynomials():
    u, w = geo.gauss_legendre_box(((0.0, 2.0), (-1.0, 1.0)), 16)
    assert np.sum(w * u[:, 0] ** 5 * u[:, 1] ** 2) == pytest.approx(64 / 6 * 2 / 3, rel=1e-13)


def test_curvature_defect_vanishes_on_model(tg_h2):
    val, radius = geo.curvature_defect_integral(tg_h2, -1.0, 3.0, nodes=48)
    assert radius == 3.0
    assert abs(val) < 1e-4


def test_curvature_defect_of_warped_metric(warped):
    # K = -f''/f, so int (kappa - K) f dr dtheta = 2 pi (f'(R) - f'(0) - int_0^R f)
    import mpmath as mp

    eps, R = 0.1, 3.0

    def f(r):
        return mp.sinh(r) * (1 + eps * mp.tanh(r) ** 2)

    ref = 2 * mp.pi * (mp.diff(f, R) - mp.diff(f, 0) - mp.quad(f, [0, R]))
    val, _ = geo.curvature_defect_integral(warped, -1.0, R, nodes=96)
    assert val == pytest.approx(float(ref), rel=1e-5)


def test_intrinsic_geometry_has_no_sff(warped):
    with pytest.raises(GeometryError):
        geo.second_fundamental_form_norm(warped, np.array([1.0, 0.0]))
