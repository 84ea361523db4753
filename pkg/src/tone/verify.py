"""Named invariant checks and the acceptance suite, shared by the CLI and the tests."""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from tone import bounds as bd
from tone import catalog
from tone import geometry as geo
from tone import growth as gr
from tone import oracles
from tone import spectrum as sp
from tone.spaceform import SpaceForm, c_kappa, s_kappa

SUITES = ("spaceform", "geometry", "growth", "bounds", "spectrum", "catalog", "acceptance")


@dataclass
class Outcome:
    name: str
    suite: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    fn: Callable
    description: str = ""

    def run(self) -> Outcome:
        start = time.perf_counter()
        try:
            passed, detail, data = self.fn()
        except Exception as exc:  # a crashing check is a failing check
            passed, detail, data = False, f"{type(exc).__name__}: {exc}", {}
        return Outcome(self.name, self.suite, bool(passed), detail, time.perf_counter() - start, data)


REGISTRY: list = []


def check(suite: str, name: str, description: str = ""):
    def deco(fn):
        REGISTRY.append(Check(name, suite, fn, description))
        return fn

    return deco


# --------------------------------------------------------------------------
# cached shared objects


@functools.lru_cache(maxsize=None)
def geometry(name: str, **params):
    return catalog.build(name, **params)


def _geom(name: str, params: tuple = ()):
    return geometry(name, **dict(params))


@functools.lru_cache(maxsize=None)
def profile(name: str, params: tuple, s_max: float, bins: int):
    return gr.compute_growth_profile(_geom(name, params), s_max, bins)


TG2 = ("totally-geodesic", (("kappa", -1.0), ("m", 3), ("n", 2)))
TG_FLAT = ("totally-geodesic", (("kappa", 0.0), ("m", 3), ("n", 2)))
TG3 = ("totally-geodesic", (("kappa", -1.0), ("m", 5), ("n", 3)))
ECAT = ("euclidean-catenoid", (("scale", 1.0),))
HCAT = ("catenoid-h3", (("a", 1.0), ("kappa", -1.0)))
WARP = ("warped-surface", (("epsilon", 0.1), ("kappa", -1.0)))
MINIMAL = (TG2, TG_FLAT, TG3, ECAT, HCAT)
ALL = MINIMAL + (WARP,)

# moderate-radius profiles used by the invariant checks
PROFILE_RADIUS = {TG2: 30.0, TG_FLAT: 50.0, TG3: 20.0, ECAT: 50.0, HCAT: 30.0, WARP: 30.0}


def standard_profile(key) -> gr.GrowthProfile:
    return profile(key[0], key[1], PROFILE_RADIUS[key], 600)


@functools.lru_cache(maxsize=None)
def catenoid_oracle(a: float = 1.0, mesh: int = sp.DEFAULT_MESH) -> sp.SpectrumResult:
    return sp.tone_of_revolution_surface(_geom("catenoid-h3", (("a", a), ("kappa", -1.0))).revolution, mesh=mesh)


def _label(key) -> str:
    return key[0] + "(" + ",".join(f"{k}={v}" for k, v in key[1]) + ")"


# --------------------------------------------------------------------------
# spaceform


@check("spaceform", "ball_volume_derivative")
def _ball_derivative():
    worst = 0.0
    for kappa, n in ((-1.0, 2), (-1.0, 3), (0.0, 3), (-4.0, 4)):
        sf = SpaceForm(kappa, n)
        for R in (0.5, 1.0, 2.0, 4.0):
            # step on the scale of the exponential growth length
            h = 1e-3 * min(R, 1.0 / max((n - 1) * sf.scale, 1e-300))
            V = sf.ball_volume
            fd = (8 * (V(R + h) - V(R - h)) - (V(R + 2 * h) - V(R - 2 * h))) / (12 * h)
            worst = max(worst, abs(fd / sf.sphere_volume(R) - 1))
    return worst < 1e-8, f"max relative gap {worst:.2e}", {"worst": worst}


@check("spaceform", "c_kappa_limit")
def _c_limit():
    gaps = [abs(c_kappa(k, 40 / math.sqrt(-k)) - math.sqrt(-k)) for k in (-0.25, -1.0, -4.0)]
    return max(gaps) < 1e-10, f"max gap {max(gaps):.2e}", {}


@check("spaceform", "flat_continuity")
def _flat_continuity():
    t = np.linspace(0.1, 5, 20)
    gap = float(np.max(np.abs(s_kappa(-1e-12, t) / t - 1)))
    return gap < 1e-9, f"relative gap {gap:.2e}", {}


# --------------------------------------------------------------------------
# geometry


@check("geometry", "hyperboloid_constraint")
def _constraint():
    worst = 0.0
    for key in (TG2, TG3, HCAT):
        g = _geom(*key)
        box = [(lo, hi) for lo, hi in g.truncation(5.0)]
        u, _ = geo.gauss_legendre_box(box, 16)
        worst = max(worst, float(np.max(g.ambient.constraint_violation(g.points(u)))))
    return worst <= 1e-10, f"max |kappa<x,x> - 1| = {worst:.2e}", {}


@check("geometry", "distance_triangle_inequality")
def _triangle():
    g = _geom(*HCAT)
    rng_u = np.stack(np.meshgrid(np.linspace(-2, 2, 7), np.linspace(0, 6, 7), indexing="ij"), -1).reshape(-1, 2)
    x = g.points(rng_u)
    amb = g.ambient
    d = amb.distance(x[:, None, :], x[None, :, :])
    # slack[i, j, k] = d(i, k) - d(i, j) - d(j, k)
    slack = d[:, None, :] - d[:, :, None] - d[None, :, :]
    sym = float(np.max(np.abs(d - d.T)))
    diag = float(np.max(np.abs(np.diag(d))))
    worst = float(np.max(slack))
    return worst <= 1e-9 and sym == 0.0 and diag == 0.0, f"worst excess {worst:.2e}", {}


@check("geometry", "gauss_equation_agreement")
def _gauss_agreement():
    worst = 0.0
    for key, box in ((ECAT, [(-2.0, 2.0), (0.1, 6.0)]), (HCAT, [(-2.0, 2.0), (0.1, 6.0)])):
        g = _geom(*key)
        u, _ = geo.gauss_legendre_box(box, 16)
        a_fd = geo.second_fundamental_form_norm(g, u)
        a_ge = geo.gauss_equation_norm(g, u)
        worst = max(worst, float(np.max(np.abs(a_fd - a_ge) / a_fd)))
    return worst < 1e-4, f"max relative gap {worst:.2e}", {}


@check("geometry", "catenoid_area_element")
def _area():
    g = _geom(*ECAT)
    u = np.stack([np.linspace(-3, 3, 25), np.linspace(0, 6, 25)], -1)
    gap = float(np.max(np.abs(geo.area_element(g, u) / np.cosh(u[:, 0]) ** 2 - 1)))
    return gap < 1e-12, f"relative gap {gap:.2e}", {}


# --------------------------------------------------------------------------
# growth


@check("growth", "model_ball_volume")
def _model_volume():
    worst = 0.0
    for key in (TG2, TG3, TG_FLAT):
        p = standard_profile(key)
        sf = SpaceForm(p.kappa, p.n)
        ref = np.asarray(sf.log_ball_volume(p.radii[1:]))
        worst = max(worst, float(np.max(np.abs(np.expm1(p.log_vol[1:] - ref)))))
    return worst < 1e-6, f"max relative gap {worst:.2e}", {}


@check("growth", "bin_refinement")
def _refinement():
    worst = 0.0
    for key in (ECAT, HCAT):
        coarse = profile(key[0], key[1], 20.0, 200)
        fine = profile(key[0], key[1], 20.0, 400)
        gap = abs(math.expm1(fine.log_vol[-1] - coarse.log_vol[-1]))
        worst = max(worst, gap / max(coarse.rel_error, fine.rel_error))
    return worst < 1.0, f"max gap / error estimate {worst:.2f}", {}


@check("growth", "monotonicity")
def _monotone():
    fails = [_label(k) for k in ALL if not gr.check_monotonicity(standard_profile(k)).passed]
    return not fails, "violations: " + ", ".join(fails) if fails else "all catalog profiles monotone", {}


@check("growth", "volume_comparison")
def _comparison():
    fails = [_label(k) for k in MINIMAL if not gr.check_volume_comparison(standard_profile(k)).passed]
    return not fails, "violations: " + ", ".join(fails) if fails else "inequality holds on all minimal entries", {}


# --------------------------------------------------------------------------
# bounds


@check("bounds", "majorization_chain")
def _majorization():
    worst = -math.inf
    for key, radii in ((ECAT, (10.0, 20.0, 50.0)), (HCAT, (10.0, 20.0, 30.0)), (TG2, (10.0, 30.0))):
        p = standard_profile(key)
        for R in radii:
            ray = bd.rayleigh_upper(p, p.n, p.kappa, R)
            asm = bd.assembled_upper(p, p.n, p.kappa, R)
            worst = max(worst, ray - (asm * (1 + 1e-9) + 1e-12))
    return worst <= 0, f"max excess {worst:.2e}", {}


@check("bounds", "space_form_reduction")
def _reduction():
    ok = True
    for R in (5.0, 20.0, 100.0, 500.0):
        p = gr.GrowthProfile.model(-1.0, 2, R, max(200, int(R / 0.05)))
        ok &= bd.rayleigh_upper(p, 2, -1.0, R) <= bd.lambda_R(2, -1.0, R)
        ok &= abs(bd.assembled_upper(p, 2, -1.0, R) - bd.lambda_R(2, -1.0, R)) <= 1e-12
    return ok, "rayleigh <= Lambda and assembled_upper = Lambda when delta = 0", {}


@check("bounds", "lower_bound_consistency")
def _lower():
    ok = all(bd.mckean_lower(n, k) == bd.cheeger_lower(n, k) for n in range(2, 7) for k in (0.0, -1.0, -4.0, -0.25))
    return ok, "McKean and Cheeger constants coincide", {}


@check("bounds", "sine_integral")
def _sine():
    from scipy.integrate import quad

    R = 37.0
    val, _ = quad(lambda s: math.sin(2 * math.pi * (s - R / 2) / R) ** 2, R / 2, R, epsabs=0, epsrel=1e-13)
    gap = abs(val / (R / 4) - 1)
    return gap < 1e-10, f"relative gap {gap:.2e}", {}


@check("bounds", "limit_bookkeeping")
def _limits():
    R = 1e4
    hyp = bd.ball_to_sphere_factor(2, -1.0, R)
    flat = bd.ball_to_sphere_factor(2, 0.0, R)
    lam = abs(bd.lambda_R(2, -1.0, R) - 0.25)
    ok = hyp < 0.01 * 4 / 2 and abs(flat / (4 / 2) - 1) < 0.01 and lam < 0.0015
    return ok, f"B/S*4/R: hyperbolic {hyp:.2e}, flat {flat:.4f} (4/n = 2); |Lambda - 1/4| = {lam:.2e}", {}


# --------------------------------------------------------------------------
# spectrum


@check("spectrum", "sturm_bisection_vs_lapack")
def _lapack():
    from scipy.linalg import eigvalsh_tridiagonal

    prob = sp.radial_problem(_geom(*TG2).revolution, 10.0)
    d, e = sp.discretize(prob, 512)
    ref = eigvalsh_tridiagonal(d, e, select="i", select_range=(0, 0))[0]
    gap = abs(sp.smallest_eigenvalue_tridiagonal(d, e) / ref - 1)
    return gap < 1e-12, f"relative gap {gap:.2e}", {}


@check("spectrum", "domain_monotonicity")
def _domain_mono():
    res = catenoid_oracle()
    vals = np.array(res.lambda1)
    return bool(np.all(np.diff(vals) < 0)), f"lambda1(T) = {np.round(vals, 6).tolist()}", {}


@check("spectrum", "mesh_order")
def _mesh_order():
    prob = sp.radial_problem(_geom(*TG2).revolution, 10.0)
    l1, l2, l4 = (sp.bottom_eigenvalue(prob, N) for N in (256, 512, 1024))
    ok = abs(l1 - l2) <= 4 * abs(l2 - l4) * 1.1
    return ok, f"successive gaps {abs(l1 - l2):.2e}, {abs(l2 - l4):.2e}", {}


@check("spectrum", "above_mckean")
def _above():
    res = catenoid_oracle()
    low = bd.mckean_lower(2, -1.0)
    ok = all(v >= low - res.error for v in res.lambda1)
    return ok, f"min lambda1 {min(res.lambda1):.6f} vs {low}", {}


# --------------------------------------------------------------------------
# catalog


@check("catalog", "first_integral_conservation")
def _conservation():
    prof = catalog.catenoid_profile(1.0)
    return prof.conservation_error <= 1e-8, f"relative drift {prof.conservation_error:.2e}", {}


@check("catalog", "waist_root")
def _waist():
    from scipy.optimize import brentq

    a = 1.0
    root = brentq(lambda r: math.sinh(r) * math.cosh(r) - a, 1e-6, 5.0, xtol=1e-15)
    gap = abs(catalog.catenoid_profile(a).rho0 - root)
    return gap < 1e-12, f"waist radius gap {gap:.2e}", {}


@check("catalog", "mean_curvature")
def _mean_curvature():
    worst = 0.0
    for key in (TG2, TG3, ECAT, HCAT):
        g = _geom(*key)
        u, _ = geo.gauss_legendre_box(g.truncation(3.0), 8)
        worst = max(worst, float(np.max(geo.mean_curvature_norm(g, u))) * g.length_scale)
    return worst <= 1e-6, f"max |H| = {worst:.2e}", {}


@check("catalog", "warped_curvature")
def _warped():
    g = _geom(*WARP)
    r = np.linspace(0.0, 40.0, 4001)
    K = g.gauss_curvature(np.stack([r, np.zeros_like(r)], -1))
    excess = float(np.max(K - g.kappa))
    return excess <= 0.0, f"max K - kappa = {excess:.3e}", {}


# --------------------------------------------------------------------------
# acceptance criteria


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def acceptance_1():
    def run():
        g = catalog.build("totally-geodesic", n=2, m=3, kappa=-1.0)
        p = gr.compute_growth_profile(g, 2000.0, 40000)
        return bd.assemble_report("totally-geodesic", p, [500.0, 1000.0, 2000.0])

    rep, secs = _timed(run)
    lo, hi = rep.verdict
    ok = lo >= 0.25 and hi <= 0.2513 and secs < 5.0
    return ok, f"verdict [{lo:.6f}, {hi:.8f}] in {secs:.2f}s", {"verdict": rep.verdict, "seconds": secs}


def acceptance_2():
    def run():
        res = catenoid_oracle()
        p = profile(HCAT[0], HCAT[1], 200.0, 4000)
        rep = bd.assemble_report("catenoid-h3", p, [25.0, 50.0, 100.0, 200.0])
        return res, rep

    (res, rep), secs = _timed(run)
    lam, err = res.extrapolated, res.error
    lo, hi = rep.verdict
    inside = lo - err <= lam <= hi + err
    ok = abs(lam / 0.25 - 1) < 0.02 and inside and secs < 60.0
    return ok, f"oracle {lam:.6f} +- {err:.1e}, verdict [{lo:.4f}, {hi:.4f}], {secs:.1f}s", {"oracle": lam}


def acceptance_3():
    ci = gr.curvature_integral(_geom(*HCAT), 2, 30.0)
    return ci.tail_fraction < 0.01, f"int |A|^2 = {ci.value:.6f}, last-quartile share {ci.tail_fraction:.2e}", {}


def acceptance_4():
    p = profile(ECAT[0], ECAT[1], 1e4, 20000)
    up3 = bd.assemble_report("euclidean-catenoid", p, [1e3]).verdict[1]
    up4 = bd.assemble_report("euclidean-catenoid", p, [1e4]).verdict[1]
    total = gr.curvature_integral(_geom(*ECAT), 2, 200.0).value
    gap = abs(total / (8 * math.pi) - 1)
    ok = up3 <= 1.5e-3 and up4 <= 1.5e-4 and gap < 0.005
    return ok, f"upper {up3:.3e} (R=1e3), {up4:.3e} (R=1e4); int |A|^2 off 8 pi by {gap:.1e}", {}


def negative_control_profile() -> gr.GrowthProfile:
    """Synthetic flat profile whose Q decreases from 1.5 towards 1."""
    return gr.GrowthProfile.from_q_function(lambda s: 1.5 - 0.5 * np.tanh(s), 0.0, 2, 10.0, 100)


def acceptance_5(extra: Optional[dict] = None):
    fails = [_label(k) for k in ALL if not gr.check_monotonicity(standard_profile(k)).passed]
    control = gr.check_monotonicity(negative_control_profile())
    injected = {name: gr.check_monotonicity(p).passed for name, p in (extra or {}).items()}
    ok = not fails and not control.passed and all(injected.values())
    detail = f"catalog violations: {fails or 'none'}; negative control {'caught' if not control.passed else 'missed'}"
    if injected:
        detail += f"; injected profiles monotone: {injected}"
    return ok, detail, {}


def acceptance_6():
    shares = {_label(k): gr.check_volume_comparison(standard_profile(k)).detail["fraction_ok"] for k in MINIMAL}
    return min(shares.values()) >= 0.99, f"worst share of bins {min(shares.values()):.4f}", shares


def acceptance_7():
    ok = True
    for R in (10.0, 100.0, 1e3, 1e4):
        p = gr.GrowthProfile.model(-1.0, 2, R, max(200, int(R / 0.05)))
        ok &= bd.rayleigh_upper(p, 2, -1.0, R) <= bd.lambda_R(2, -1.0, R)
    excess = bd.lambda_R(2, -1.0, 1e4) - 0.25
    ok &= excess <= 0.0015
    return ok, f"rayleigh <= Lambda on all radii; Lambda(1e4) - 1/4 = {excess:.2e}", {}


def acceptance_8():
    tg = standard_profile(TG2)
    C = gr.doubling_constant(tg)
    lo, hi = bd.two_sided_estimate(tg, 2, -1.0)
    p = standard_profile(ECAT)
    Ce = gr.doubling_constant(p)
    elo, ehi = bd.two_sided_estimate(p, 2, 0.0)
    res = sp.tone_of_revolution_surface(_geom(*ECAT).revolution, truncations=(10.0, 20.0, 30.0), mesh=2048)
    lam, err = res.extrapolated, res.error
    ok = abs(C - 1.0) <= 4e-9 and abs(lo - 0.25) < 1e-12 and hi - lo <= 1e-9
    ok &= math.isfinite(Ce) and 1.0 <= Ce <= 2.0 and elo - err <= lam <= ehi + err
    return ok, f"C = {C} width {hi - lo:.1e}; catenoid C = {Ce:.4f}, oracle {lam:.2e} +- {err:.1e} in [{elo}, {ehi}]", {}


def acceptance_9():
    e = _geom(*ECAT)
    pe = standard_profile(ECAT)
    total = gr.curvature_integral(e, 2, 200.0).value
    rep_e = gr.check_growth_theorems(e, pe, {"A2": total})
    h = _geom(*HCAT)
    rep_h = gr.check_growth_theorems(h, standard_profile(HCAT))
    tc = next(c for c in rep_e["checks"] if c["name"] == "total_curvature")
    ends = next(c for c in rep_h["checks"] if c["name"] == "ends")
    ok = tc["holds"] and ends["holds"]
    return ok, f"catenoid {tc['lhs']:.4f} <= {tc['rhs']:.4f}; hyperbolic catenoid {ends['lhs']:.4f} <= 2", {}


def acceptance_10():
    disk = sp.SturmLiouvilleProblem(0.0, 1.0, weight=lambda t: t, left="neumann")
    d_est, _ = sp.richardson_extrapolate(sp.bottom_eigenvalue(disk, 512), sp.bottom_eigenvalue(disk, 1024))
    ref = oracles.disk_dirichlet_eigenvalue()
    seg = sp.SturmLiouvilleProblem(0.0, math.pi, weight=lambda t: np.ones_like(t))
    s_est, _ = sp.richardson_extrapolate(sp.bottom_eigenvalue(seg, 256), sp.bottom_eigenvalue(seg, 512))
    ok = abs(d_est - ref) < 1e-3 and abs(s_est - 1.0) < 1e-6
    return ok, f"disk {d_est:.7f} vs j01^2 {ref:.7f}; interval {s_est:.10f}", {}


def acceptance_11():
    g = catalog.build("warped-surface", epsilon=0.1, kappa=-1.0)
    meta = g.revolution.meta
    p = gr.compute_growth_profile(g, 30.0, 600)
    q = p.q_values
    tail = q[len(q) - len(q) // 4:]
    change = float((tail.max() - tail.min()) / tail.max())
    res = sp.tone_of_revolution_surface(g.revolution)
    ok = change < 0.01 and abs(res.extrapolated / 0.25 - 1) < 0.02
    return ok, (
        f"K - kappa <= {meta['max_excess']:.1e} (finite differences); sup Q {q.max():.5f}, "
        f"tail change {change:.1e}; oracle {res.extrapolated:.6f}"
    ), {}


ACCEPTANCE = {
    1: ("McKean equality on totally geodesic H^2", acceptance_1),
    2: ("catenoid tone 1/4 and bracket", acceptance_2),
    3: ("finite int |A|^2 on the hyperbolic catenoid", acceptance_3),
    4: ("Euclidean catenoid upper bounds and total curvature", acceptance_4),
    5: ("monotonicity of Q and negative control", acceptance_5),
    6: ("volume comparison", acceptance_6),
    7: ("space-form majorization", acceptance_7),
    8: ("two-sided doubling estimate", acceptance_8),
    9: ("sup Q against total curvature and ends", acceptance_9),
    10: ("oracle independence", acceptance_10),
    11: ("warped surface exhibit", acceptance_11),
}

for _num, (_title, _fn) in ACCEPTANCE.items():
    REGISTRY.append(Check(f"acceptance_{_num}", "acceptance", _fn, _title))


def run(suites=None, injected: Optional[dict] = None) -> list:
    """Run the registered checks, optionally restricted to some suites.

    ``injected`` maps labels to extra profiles that must pass the monotonicity
    check.
    """
    suites = set(SUITES if not suites else suites)
    unknown = suites - set(SUITES)
    if unknown:
        from tone.errors import DomainError

        raise DomainError(f"unknown suites {sorted(unknown)}; known: {list(SUITES)}")
    out = []
    for chk in REGISTRY:
        if chk.suite not in suites:
            continue
        if chk.name == "acceptance_5" and injected:
            chk = Check(chk.name, chk.suite, functools.partial(acceptance_5, injected), chk.description)
        out.append(chk.run())
    if injected and "growth" in suites:
        for label, prof in injected.items():
            res = gr.check_monotonicity(prof)
            out.append(Outcome(f"injected_monotonicity[{label}]", "growth", res.passed, str(res.detail)))
    return out
