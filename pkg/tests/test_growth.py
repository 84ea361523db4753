from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tone import catalog
from tone import growth as gr
from tone.errors import DomainError, MissingMetadataError
from tone.spaceform import SpaceForm

# Q(s) of the unit Euclidean catenoid about a waist point: one-dimensional
# mpmath quadrature of the closed-form angular range, split at its kinks.
ECAT_Q = {1.0: 1.11331624248858556287, 3.0: 1.64576236716865955331, 10.0: 1.87494111491706621703}
# Same construction for the a = 1 catenoid in H^3(-1), in Fermi coordinates
# about the rotation axis with t(s) from an mpmath quadrature.
HCAT_Q = {1.0: 1.23367904880593213, 3.0: 1.67446542469438138, 6.0: 1.69781229715889813}


def test_totally_geodesic_q_is_one(tg_h2):
    p = gr.compute_growth_profile(tg_h2, 50.0, 1000)
    np.testing.assert_allclose(p.q_values, 1.0, atol=1e-10)


def test_flat_plane_q_is_one(tg_flat):
    p = gr.compute_growth_profile(tg_flat, 10.0, 100)
    np.testing.assert_allclose(p.q_values, 1.0, atol=1e-12)


def test_totally_geodesic_volume_matches_model_ball(tg_h2):
    p = gr.compute_growth_profile(tg_h2, 20.0, 200)
    sf = SpaceForm(-1.0, 2)
    np.testing.assert_allclose(p.cum_volume[1:], sf.ball_volume(p.radii[1:]), rtol=1e-6)


def test_totally_geodesic_h3_in_h4():
    g = catalog.build("totally-geodesic", n=3, m=4, kappa=-1.0)
    p = gr.compute_growth_profile(g, 5.0, 50, nodes=24)
    np.testing.assert_allclose(p.q_values, 1.0, atol=1e-6)


@pytest.mark.parametrize("s", sorted(ECAT_Q))
def test_euclidean_catenoid_against_oracle(ecat, s):
    p = gr.compute_growth_profile(ecat, 10.0, 400)
    assert p.q_at(s) == pytest.approx(ECAT_Q[s], rel=1e-9)


@pytest.mark.parametrize("s", sorted(HCAT_Q))
def test_hyperbolic_catenoid_against_oracle(hcat, s):
    p = gr.compute_growth_profile(hcat, 6.0, 600)
    assert p.q_at(s) == pytest.approx(HCAT_Q[s], rel=1e-9)


def test_euclidean_catenoid_approaches_two(ecat_profile):
    q = ecat_profile.q_values
    assert 1.98 < q[-1] < 2.0
    assert gr.check_monotonicity(ecat_profile).passed


def test_tensor_method_error_estimate_is_conservative(ecat):
    sweep = gr.compute_growth_profile(ecat, 3.0, 32, method="sweep")
    errors = []
    for nodes in (96, 192, 384):
        tensor = gr.compute_growth_profile(ecat, 3.0, 32, nodes=nodes, method="tensor")
        actual = np.max(np.abs(tensor.cum_volume[1:] / sweep.cum_volume[1:] - 1))
        assert actual <= tensor.rel_error
        errors.append(actual)
    assert errors[-1] < errors[0] and errors[-1] < 0.03


def test_bin_refinement_within_error(hcat):
    a = gr.compute_growth_profile(hcat, 20.0, 400)
    b = gr.compute_growth_profile(hcat, 20.0, 800)
    gap = abs(math.expm1(b.log_vol[-1] - a.log_vol[-1]))
    assert gap <= max(a.rel_error, b.rel_error) + 1e-12


def test_volume_comparison_holds(hcat_profile):
    res = gr.check_volume_comparison(hcat_profile)
    assert res.passed and res.detail["fraction_ok"] >= 0.99


def test_negative_control_fails_monotonicity():
    p = gr.GrowthProfile.from_q_function(lambda s: 1.5 - 0.5 * np.tanh(s), 0.0, 2, 10.0, 100)
    res = gr.check_monotonicity(p)
    assert not res.passed and res.detail["violations"] > 0


def test_doubling_constant_model_and_catenoid(tg_h2, ecat_profile):
    assert gr.doubling_constant(gr.GrowthProfile.model(-1.0, 2, 50.0, 200)) == pytest.approx(1.0, abs=1e-12)
    C = gr.doubling_constant(ecat_profile)
    assert 1.0 < C <= 2.0


def test_log_growth_delta_closed_form():
    # ln(2 - e^-2) - ln(2 - e^-1), mpmath
    p = gr.GrowthProfile.from_q_function(lambda s: 2 - np.exp(-s), 0.0, 2, 4.0, 4000)
    assert gr.log_growth_delta(p, 2.0) == pytest.approx(0.13320113475491392254, rel=1e-6)


def test_log_growth_delta_constant_q():
    assert gr.log_growth_delta(gr.GrowthProfile.model(0.0, 2, 10.0, 100), 8.0) == pytest.approx(0.0, abs=1e-13)


def test_catenoid_total_curvature():
    ci = gr.curvature_integral(catalog.build("euclidean-catenoid"), 2, 200.0)
    assert ci.value == pytest.approx(8 * math.pi, rel=1e-4)


def test_totally_geodesic_curvature_integral_vanishes(tg_h2):
    ci = gr.curvature_integral(tg_h2, 2, 5.0, bins=32, nodes=16)
    assert ci.value == pytest.approx(0.0, abs=1e-12)


def test_hyperbolic_catenoid_curvature_integral_stabilizes(hcat):
    a = gr.curvature_integral(hcat, 2, 15.0).value
    b = gr.curvature_integral(hcat, 2, 30.0).value
    assert b == pytest.approx(a, rel=1e-9)


def test_decay_profile_totally_geodesic(tg_h2):
    d = gr.decay_profile(tg_h2, 5.0, bins=20, samples=16)
    assert np.all(d.sup_bins == 0.0) and d.slope is None


def test_decay_profile_catenoid_levels_off(hcat):
    # |A| e^{2 r} tends to a positive constant on the catenoid; the tail is flat
    d = gr.decay_profile(hcat, 20.0, bins=80)
    tail = d.sup_bins[-20:]
    assert np.all(tail > 0) and abs(d.slope) < 1e-2
    assert tail.max() / tail.min() < 1.05


def test_decay_profile_rejects_euclidean(ecat):
    with pytest.raises(DomainError):
        gr.decay_profile(ecat, 5.0)


def test_growth_theorems(ecat, hcat, ecat_profile, hcat_profile):
    rep = gr.check_growth_theorems(ecat, ecat_profile, {"A2": 8 * math.pi})
    names = {c["name"]: c for c in rep["checks"]}
    assert rep["passed"] and names["total_curvature"]["rhs"] == pytest.approx(2 * math.pi)
    assert gr.check_growth_theorems(hcat, hcat_profile)["passed"]


def test_growth_theorems_need_topology(ecat_profile):
    from dataclasses import replace

    bare = replace(catalog.build("euclidean-catenoid"), topology=None)
    with pytest.raises(MissingMetadataError):
        gr.check_growth_theorems(bare, ecat_profile)


def test_csv_round_trip_is_exact(hcat_profile, tmp_path):
    path = tmp_path / "p.csv"
    gr.write_profile_csv(hcat_profile, path, {"bins": 600})
    back = gr.read_profile_csv(path)
    np.testing.assert_array_equal(back.radii, hcat_profile.radii)
    np.testing.assert_array_equal(back.log_density, hcat_profile.log_density)
    assert back.rel_error == hcat_profile.rel_error and back.kappa == -1.0
    assert gr.profile_to_csv(back, {"bins": 600}) == path.read_text()


def test_csv_header(ecat_profile):
    lines = gr.profile_to_csv(ecat_profile).splitlines()
    assert lines[0].startswith("# tone ")
    header = next(l for l in lines if not l.startswith("#"))
    assert header.split(",")[:4] == ["s", "vol", "q", "dvol_ds"]


def test_csv_without_metadata_rejected():
    with pytest.raises(DomainError):
        gr.profile_from_csv("s,vol,q,dvol_ds\n0,0,1,1\n")


@pytest.mark.parametrize("kw", [{"s_max": -1.0}, {"bins": 8}, {"nodes": 2}, {"method": "magic"}])
def test_bad_arguments(ecat, kw):
    args = {"s_max": 5.0, "bins": 32, "nodes": 16, "method": "auto"} | kw
    with pytest.raises(DomainError):
        gr.compute_growth_profile(ecat, **args)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=1, max_size=30))
def test_logcumsumexp_matches_naive(xs):
    a = np.array(xs)
    np.testing.assert_allclose(gr.logcumsumexp(a), np.log(np.cumsum(np.exp(a))), rtol=1e-12, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(-30, 30), st.floats(1e-6, 30))
def test_logdiffexp_matches_naive(b, gap):
    a = b + gap
    assert gr.logdiffexp(a, b) == pytest.approx(math.log(math.exp(a) - math.exp(b)), rel=1e-9, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 3.0), st.integers(16, 200))
def test_synthetic_profile_reproduces_q(amp, bins):
    q = lambda s: 1 + amp * np.tanh(s) ** 2
    p = gr.GrowthProfile.from_q_function(q, -1.0, 2, 8.0, bins)
    np.testing.assert_allclose(p.q_values[1:], q(p.radii[1:]), rtol=1e-10)
    assert np.all(np.diff(p.cum_volume) >= 0)
