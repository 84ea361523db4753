"""Extrinsic-ball volume profiles v(s) = Vol(M_p^s), Q(s), curvature integrals and decay data.

Volumes are carried in log space: on hyperbolic examples v(s) grows like
e^{(n-1) sqrt(-kappa) s} and overflows long before the radii used for the
bounds.  Surfaces of revolution are integrated by a one-dimensional sweep over
the profile, which gives every bin to near machine precision.  Other charts
fall back to tensor Gauss-Legendre nodes binned by radius.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_legendre

from tone import __version__
from tone import geometry as geo
from tone.errors import DomainError, GeometryError, MissingMetadataError, TruncationError
from tone.spaceform import SpaceForm

MIN_BINS = 16
DEFAULT_NODES = 48
ERROR_FLOOR = 1e-12
CSV_COLUMNS = ("s", "vol", "q", "dvol_ds", "log_vol", "log_dvol_ds")


# --------------------------------------------------------------------------
# log-space helpers


def logsumexp(a, axis=-1):
    """log(sum(exp(a))) along ``axis``; all -inf slices give -inf."""
    a = np.asarray(a, dtype=float)
    top = np.max(a, axis=axis, keepdims=True)
    safe = np.where(np.isfinite(top), top, 0.0)
    with np.errstate(divide="ignore"):
        out = np.log(np.sum(np.exp(a - safe), axis=axis)) + np.squeeze(safe, axis=axis)
    return out


def logcumsumexp(a):
    return np.logaddexp.accumulate(np.asarray(a, dtype=float))


def logdiffexp(a, b):
    """log(exp(a) - exp(b)) for a >= b; -inf where the difference is not positive."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = a + np.log(-np.expm1(b - a))
    return np.where((a > b) & np.isfinite(a), np.where(np.isfinite(b), out, a), -np.inf)


def _log_gauss(log_f: Callable, lo, hi, order: int):
    """log of int_lo^hi exp(log_f) by an ``order``-point Gauss rule per interval."""
    x, w = roots_legendre(order)
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    half = (hi - lo) / 2.0
    nodes = (lo + hi)[..., None] / 2.0 + half[..., None] * x
    with np.errstate(divide="ignore"):
        vals = log_f(nodes) + np.log(w) + np.log(np.abs(half))[..., None]
    return np.where(half > 0, logsumexp(vals), -np.inf)


# --------------------------------------------------------------------------
# profile container


@dataclass(frozen=True)
class GrowthProfile:
    """Binned volume profile on a uniform radius grid 0 = s_0 < ... < s_K.

    ``log_density[k]`` is log of (v(s_{k+1}) - v(s_k))/(s_{k+1} - s_k); every
    other quantity is derived from it, which makes the CSV round trip exact.
    """

    radii: np.ndarray
    log_density: np.ndarray
    kappa: float
    n: int
    rel_error: float = ERROR_FLOOR
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        d = np.asarray(self.log_density, dtype=float)
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "log_density", d)
        if r.ndim != 1 or r.size < 2 or r[0] != 0.0 or np.any(np.diff(r) <= 0):
            raise DomainError("radii must increase from 0")
        if d.shape != (r.size - 1,):
            raise DomainError("need one density per bin")
        if np.any(np.isnan(d)):
            raise DomainError("density contains NaN")

    @property
    def bins(self) -> int:
        return self.log_density.size

    @property
    def s_max(self) -> float:
        return float(self.radii[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.radii)

    @property
    def midpoints(self) -> np.ndarray:
        return (self.radii[:-1] + self.radii[1:]) / 2.0

    @property
    def space_form(self) -> SpaceForm:
        return SpaceForm(self.kappa, self.n)

    @property
    def log_mass(self) -> np.ndarray:
        return self.log_density + np.log(self.widths)

    @property
    def log_vol(self) -> np.ndarray:
        return np.concatenate([[-np.inf], logcumsumexp(self.log_mass)])

    @property
    def log_q(self) -> np.ndarray:
        ball = np.asarray(self.space_form.log_ball_volume(self.radii[1:]))
        return np.concatenate([[0.0], self.log_vol[1:] - ball])

    @property
    def cum_volume(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_vol)

    @property
    def density(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_density)

    @property
    def q_values(self) -> np.ndarray:
        """Q(s_k); Q(0) is 1 by the small-ball limit."""
        return np.exp(self.log_q)

    def q_at(self, s):
        """Q by linear interpolation between grid points."""
        s = np.asarray(s, dtype=float)
        if np.any(s < 0) or np.any(s > self.s_max * (1 + 1e-12)):
            raise DomainError("radius outside the profile")
        return np.interp(s, self.radii, self.q_values)

    # ---- constructors

    @classmethod
    def from_log_mass(cls, radii, log_mass, kappa, n, rel_error=ERROR_FLOOR, meta=None):
        radii = np.asarray(radii, dtype=float)
        return cls(radii, np.asarray(log_mass) - np.log(np.diff(radii)), kappa, n, rel_error, meta or {})

    @classmethod
    def from_q_function(cls, q: Callable, kappa: float, n: int, s_max: float, bins: int, meta=None):
        """Synthetic profile with v(s) = q(s) Vol(B_s^kappa) on a uniform grid."""
        radii = _grid(s_max, bins)
        sf = SpaceForm(kappa, n)
        log_v = np.concatenate(
            [[-np.inf], np.log(np.asarray(q(radii[1:]), dtype=float)) + sf.log_ball_volume(radii[1:])]
        )
        if np.any(np.diff(log_v) < 0):
            raise DomainError("q(s) Vol(B_s) must be non-decreasing")
        log_mass = logdiffexp(log_v[1:], log_v[:-1])
        return cls.from_log_mass(radii, log_mass, kappa, n, meta={"synthetic": True, **(meta or {})})

    @classmethod
    def model(cls, kappa: float, n: int, s_max: float, bins: int):
        """The Q = 1 profile of the space form itself, with exact bin masses."""
        return cls.from_q_function(lambda s: np.ones_like(s), kappa, n, s_max, bins, {"model": True})


def _grid(s_max: float, bins: int) -> np.ndarray:
    if not s_max > 0:
        raise DomainError("s_max must be > 0")
    if bins < MIN_BINS:
        raise DomainError(f"bins must be >= {MIN_BINS}")
    return np.linspace(0.0, float(s_max), int(bins) + 1)


# --------------------------------------------------------------------------
# sweeps over surfaces of revolution


def _centered_log_masses(rev: geo.SurfaceOfRevolution, radii, log_w, order):
    """Bin masses of Omega int g^{n-1} (times an optional weight) for a pole-centered profile."""
    omega = math.log(2.0 * math.pi ** (rev.dim / 2) / math.gamma(rev.dim / 2))
    return omega + _log_gauss(log_w, radii[:-1], radii[1:], order)


def _bisect(f: Callable, lo, hi, iters: int = 200):
    """Vectorized bisection for an increasing f with f(lo) <= 0 < f(hi)."""
    lo, hi = np.array(lo, dtype=float), np.array(hi, dtype=float)
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        if np.all((mid == lo) | (mid == hi)):
            break
        pos = f(mid) > 0
        hi = np.where(pos, mid, hi)
        lo = np.where(pos, lo, mid)
    return (lo + hi) / 2.0


class _Side:
    """One half of an off-axis profile, parametrized by distance x >= 0 from the base circle."""

    def __init__(self, rev: geo.SurfaceOfRevolution, sign: float, s_max: float, log_w, order, cells):
        self.rev, self.sign, self.order = rev, sign, order
        self.base = rev.base_sigma
        limit = (rev.sigma_hi - self.base) if sign > 0 else (self.base - rev.sigma_lo)
        reach = max(s_max, 1e-3)
        while float(self.r_min(reach)) <= s_max:
            if reach >= limit:
                raise TruncationError(f"{rev.name}: profile ends before radius {s_max}")
            reach = min(2.0 * reach, limit)
        self.reach = reach
        grid = np.linspace(0.0, reach, 4097)
        for fn in (self.r_min, self.r_max):
            vals = fn(grid)
            if np.any(np.diff(vals) < -1e-12 * (1.0 + np.abs(vals[1:]))):
                raise GeometryError(f"{rev.name}: circle distances are not monotone along the profile")
        self.log_w = lambda x: log_w(self.sigma(x))
        self.edges = np.linspace(0.0, reach, cells + 1)
        cell_mass = _log_gauss(self.log_w, self.edges[:-1], self.edges[1:], order)
        self.prim = np.concatenate([[-np.inf], logcumsumexp(cell_mass)])

    def sigma(self, x):
        return self.base + self.sign * np.asarray(x, dtype=float)

    def r_min(self, x):
        return self.rev.r_min(self.sigma(x))

    def r_max(self, x):
        return self.rev.r_max(self.sigma(x))

    def log_primitive(self, x):
        """log int_0^x w along this side."""
        x = np.asarray(x, dtype=float)
        k = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.edges.size - 2)
        tail = _log_gauss(self.log_w, self.edges[k], x, self.order)
        return np.logaddexp(self.prim[k], tail)

    def log_partial(self, a, b, s):
        """log int_a^b frac(x, s) w dx with a smoothstep map to tame the endpoint square roots."""
        x, wq = roots_legendre(self.order)
        u = (x + 1.0) / 2.0
        a, b, s = (np.asarray(v, dtype=float)[..., None] for v in (a, b, s))
        L = b - a
        pts = a + L * (3 * u**2 - 2 * u**3)
        jac = L * 6 * u * (1 - u) * wq / 2.0
        frac = self.rev.inside_fraction(self.sigma(pts), s)
        with np.errstate(divide="ignore"):
            vals = self.log_w(pts) + np.log(frac) + np.log(jac)
        return np.where(L[..., 0] > 0, logsumexp(vals), -np.inf)

    def log_cumulative(self, s):
        """log of int over this side of 2 pi frac w, for each radius in ``s`` (s > 0)."""
        s = np.asarray(s, dtype=float)
        r_far0 = float(self.r_max(0.0))
        hi = np.full(s.shape, self.reach)
        full_end = np.where(s > r_far0, _bisect(lambda x: self.r_max(x) - s, np.zeros(s.shape), hi), 0.0)
        part_end = _bisect(lambda x: self.r_min(x) - s, np.zeros(s.shape), hi)
        part_end = np.maximum(part_end, full_end)
        full = self.log_primitive(full_end)
        partial = self.log_partial(full_end, part_end, s)
        return math.log(2.0 * math.pi) + np.logaddexp(full, partial)


def _offaxis_log_vol(rev, radii, log_w, order, cells):
    sides = [_Side(rev, sgn, float(radii[-1]), log_w, order, cells) for sgn in (1.0, -1.0)]
    s = radii[1:]
    total = np.logaddexp(sides[0].log_cumulative(s), sides[1].log_cumulative(s))
    return np.concatenate([[-np.inf], total])


def _revolution_log_masses(rev, radii, log_w, order):
    if rev.centered:
        return _centered_log_masses(rev, radii, log_w, order)
    if rev.dim != 2:
        raise DomainError("off-axis sweep needs a surface")
    log_vol = _offaxis_log_vol(rev, radii, log_w, order, cells=radii.size - 1)
    return logdiffexp(log_vol[1:], log_vol[:-1])


def _volume_weight(rev: geo.SurfaceOfRevolution):
    return lambda sig: (rev.dim - 1) * np.asarray(rev.log_g(sig))


def _curvature_weight(rev: geo.SurfaceOfRevolution, power: float):
    def log_w(sig):
        with np.errstate(divide="ignore"):
            return (rev.dim - 1) * np.asarray(rev.log_g(sig)) + power * np.log(rev.sff_norm(sig))

    return log_w


# --------------------------------------------------------------------------
# tensor quadrature path


def _tensor_log_masses(geom: geo.ImmersedGeometry, radii, nodes, weight=None):
    if geom.truncation is None:
        raise TruncationError(f"{geom.name}: no truncation map")
    box = geom.truncation(float(radii[-1]))
    u, wt = geo.gauss_legendre_box(box, nodes)
    r = geo.extrinsic_distance(geom, u)
    dA = geo.area_element(geom, u) * wt
    if weight is not None:
        dA = dA * weight(u)
    faces = _box_boundary(geom, box, nodes)
    if faces is not None and np.min(geo.extrinsic_distance(geom, faces)) < radii[-1] * (1 - 1e-9):
        raise TruncationError(f"{geom.name}: truncation box does not cover the ball of radius {radii[-1]}")
    idx = np.searchsorted(radii, r, side="right") - 1
    keep = (idx >= 0) & (idx < radii.size - 1)
    mass = np.bincount(idx[keep], weights=dA[keep], minlength=radii.size - 1)
    with np.errstate(divide="ignore"):
        return np.log(mass)


def _box_boundary(geom: geo.ImmersedGeometry, box, nodes):
    """Points on the faces of a truncation box that lie strictly inside the chart domain."""
    line = [np.linspace(lo, hi, max(nodes, 8)) for lo, hi in box]
    pts = []
    for axis, ((lo, hi), (dlo, dhi)) in enumerate(zip(box, geom.domain)):
        for val, edge in ((lo, dlo), (hi, dhi)):
            if val == edge:
                continue
            grids = np.meshgrid(*[np.array([val]) if j == axis else line[j] for j in range(len(box))], indexing="ij")
            pts.append(np.stack([g.ravel() for g in grids], axis=-1))
    return np.concatenate(pts) if pts else None


# --------------------------------------------------------------------------
# public operations


def compute_growth_profile(
    geom: geo.ImmersedGeometry,
    s_max: float,
    bins: int = 400,
    nodes: int = DEFAULT_NODES,
    method: str = "auto",
) -> GrowthProfile:
    """Volume profile of the extrinsic balls about the base point.

    ``method`` is "sweep" (surfaces of revolution), "tensor" (binned tensor
    Gauss nodes; any chart) or "auto".  The relative error estimate compares
    the result against the same computation at half the node count.
    """
    radii = _grid(s_max, bins)
    if nodes < 4:
        raise DomainError("nodes must be >= 4")
    if method == "auto":
        method = "sweep" if geom.revolution is not None else "tensor"
    if method == "sweep":
        if geom.revolution is None:
            raise DomainError(f"{geom.name}: no revolution data for the sweep")
        log_w = _volume_weight(geom.revolution)
        fine = _revolution_log_masses(geom.revolution, radii, log_w, nodes)
        coarse = _revolution_log_masses(geom.revolution, radii, log_w, max(nodes // 2, 2))
    elif method == "tensor":
        fine = _tensor_log_masses(geom, radii, nodes)
        coarse = _tensor_log_masses(geom, radii, max(nodes // 2, 2))
    else:
        raise DomainError(f"unknown method {method!r}")
    err = _cumulative_discrepancy(fine, coarse)
    meta = {"geometry": geom.name, "method": method, "nodes": int(nodes), "bins": int(bins), "params": geom.params}
    return GrowthProfile.from_log_mass(radii, fine, geom.kappa, geom.n, max(err, ERROR_FLOOR), meta)


def _cumulative_discrepancy(fine, coarse) -> float:
    a, b = logcumsumexp(fine), logcumsumexp(coarse)
    ok = np.isfinite(a) & np.isfinite(b)
    if not np.any(ok):
        return 0.0
    return float(np.max(np.abs(np.expm1(a[ok] - b[ok]))))


def doubling_constant(profile: GrowthProfile) -> float:
    """sup of Q(R)/Q(R/2) over grid radii R >= 2 s_1 (never below 1)."""
    R = profile.radii[profile.radii >= 2 * profile.radii[1] * (1 - 1e-12)]
    if R.size == 0:
        raise DomainError("profile too coarse for a doubling constant")
    ratio = np.interp(R, profile.radii, profile.q_values) / profile.q_at(R / 2)
    return max(float(np.max(ratio)), 1.0)


def log_growth_delta(profile: GrowthProfile, R: float) -> float:
    """ln Q(R) - ln Q(R/2) with Q interpolated linearly between grid points."""
    if R / 2 < profile.radii[1] * (1 - 1e-12):
        raise DomainError("R/2 must be at least the first grid radius")
    return float(np.log(profile.q_at(R)) - np.log(profile.q_at(R / 2)))


@dataclass(frozen=True)
class CurvatureIntegral:
    value: float
    power: float
    radii: np.ndarray
    contributions: np.ndarray  # per radius bin

    @property
    def tail_fraction(self) -> float:
        """Share of the total carried by the last quartile of bins."""
        if self.value == 0.0:
            return 0.0
        k = self.contributions.size
        return float(np.sum(self.contributions[k - k // 4:]) / self.value)


def curvature_integral(
    geom: geo.ImmersedGeometry, power: float, s_max: float, bins: int = 200, nodes: int = DEFAULT_NODES
) -> CurvatureIntegral:
    """Truncated integral of |A|^power over the extrinsic ball of radius s_max."""
    if not power > 0:
        raise DomainError("power must be > 0")
    radii = _grid(s_max, bins)
    if geom.revolution is not None and not geom.revolution.intrinsic:
        log_mass = _revolution_log_masses(geom.revolution, radii, _curvature_weight(geom.revolution, power), nodes)
    else:
        log_mass = _tensor_log_masses(
            geom, radii, nodes, weight=lambda u: geo.second_fundamental_form_norm(geom, u) ** power
        )
    contrib = np.exp(log_mass)
    return CurvatureIntegral(float(np.sum(contrib)), float(power), radii, contrib)


@dataclass(frozen=True)
class DecayProfile:
    radii: np.ndarray
    log_sup: np.ndarray  # per bin log sup of |A| e^{2 sqrt(-kappa) r}; -inf if |A| = 0
    slope: Optional[float]  # least-squares slope of log_sup over the last quartile

    @property
    def sup_bins(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.log_sup)


def decay_profile(geom: geo.ImmersedGeometry, s_max: float, bins: int = 100, samples: int = 64) -> DecayProfile:
    """Per-bin sup of |A| e^{2 sqrt(-kappa) r_p} and its tail trend."""
    if geom.intrinsic or geom.ambient is None or not geom.ambient.hyperbolic_model:
        raise DomainError("decay profile needs a hyperbolic ambient space")
    c = math.sqrt(-geom.kappa)
    radii = _grid(s_max, bins)
    rev = geom.revolution
    if rev is not None:
        box = [(max(rev.sigma_lo, -_reach(geom, s_max)), min(rev.sigma_hi, _reach(geom, s_max))), (0.0, math.pi)]
        sig = np.linspace(box[0][0], box[0][1], samples * bins + 1)
        th = np.linspace(0.0, math.pi, samples + 1) if not rev.centered else np.zeros(1)
        S, T = np.meshgrid(sig, th, indexing="ij")
        r = rev.distance(S, T)
        with np.errstate(divide="ignore"):
            vals = np.log(rev.sff_norm(S)) + 2 * c * r
    else:
        u, _ = geo.gauss_legendre_box(geom.truncation(s_max), samples)
        r = geo.extrinsic_distance(geom, u)
        with np.errstate(divide="ignore"):
            vals = np.log(geo.second_fundamental_form_norm(geom, u)) + 2 * c * r
    r, vals = np.ravel(r), np.ravel(vals)
    idx = np.searchsorted(radii, r, side="right") - 1
    keep = (idx >= 0) & (idx < bins)
    log_sup = np.full(bins, -np.inf)
    np.maximum.at(log_sup, idx[keep], vals[keep])
    return DecayProfile(radii, log_sup, _tail_slope((radii[:-1] + radii[1:]) / 2, log_sup))


def _reach(geom, s_max):
    box = geom.truncation(s_max)
    return max(abs(box[0][0]), abs(box[0][1]))


def _tail_slope(x, y) -> Optional[float]:
    k = x.size
    xs, ys = x[k - k // 4:], y[k - k // 4:]
    ok = np.isfinite(ys)
    if np.count_nonzero(ok) < 2:
        return None
    return float(np.polyfit(xs[ok], ys[ok], 1)[0])


# --------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: dict


def check_monotonicity(profile: GrowthProfile, tol: Optional[float] = None) -> CheckResult:
    """Q(s_{k+1}) >= Q(s_k) (1 - tol), tol defaulting to three times the error estimate."""
    tol = 3.0 * profile.rel_error if tol is None else tol
    lq = profile.log_q
    drops = lq[:-1] - lq[1:]
    allowed = -math.log1p(-tol) if tol < 1 else math.inf
    bad = np.nonzero(drops > allowed)[0]
    return CheckResult(
        "monotonicity",
        bad.size == 0,
        {
            "tol": tol,
            "violations": int(bad.size),
            "worst_drop": float(np.max(drops)) if drops.size else 0.0,
            "first_violation_s": float(profile.radii[bad[0] + 1]) if bad.size else None,
        },
    )


def check_volume_comparison(profile: GrowthProfile, tol: Optional[float] = None, quota: float = 0.99) -> CheckResult:
    """density_k >= Q(s_k) Vol(S_{s_k}) (1 - 3 tol) using the left end of each bin."""
    tol = profile.rel_error if tol is None else tol
    sf = profile.space_form
    left = profile.radii[:-1]
    with np.errstate(divide="ignore"):
        rhs = profile.log_q[:-1] + np.asarray(sf.log_sphere_volume(left)) + math.log1p(-3.0 * tol)
    ok = profile.log_density >= rhs
    share = float(np.mean(ok))
    return CheckResult("volume_comparison", share >= quota, {"tol": tol, "fraction_ok": share, "quota": quota})


def check_growth_theorems(geom: geo.ImmersedGeometry, profile: GrowthProfile, integrals: Optional[dict] = None) -> dict:
    """sup Q against the total-curvature bound (surfaces) and the number of ends.

    ``integrals`` may carry {"A2": value of int |A|^2}.  Raises
    MissingMetadataError if neither inequality has the data it needs.
    """
    integrals = integrals or {}
    topo = geom.topology
    sup_q = float(np.max(profile.q_values))
    slack = 3.0 * profile.rel_error * sup_q
    out = {"sup_q": sup_q, "checks": []}
    if topo is not None and topo.euler_char is not None and "A2" in integrals and geom.n == 2:
        rhs = integrals["A2"] / 4.0 + topo.euler_char
        out["checks"].append(
            {"name": "total_curvature", "lhs": sup_q, "rhs": rhs, "holds": sup_q <= rhs + slack,
             "caveat": "uses the Euler characteristic of the whole surface, not of the truncated piece"}
        )
    if topo is not None and topo.ends is not None:
        out["checks"].append({"name": "ends", "lhs": sup_q, "rhs": float(topo.ends), "holds": sup_q <= topo.ends + slack})
    if not out["checks"]:
        raise MissingMetadataError(f"{geom.name}: no topology data for the growth theorems")
    out["passed"] = all(c["holds"] for c in out["checks"])
    return out


# --------------------------------------------------------------------------
# CSV


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def profile_to_csv(profile: GrowthProfile, config: Optional[dict] = None) -> str:
    """Row k holds s_k, v(s_k), Q(s_k) and the density of bin k (nan on the last row)."""
    buf = io.StringIO()
    buf.write(f"# tone {__version__}\n")
    header = {"kappa": profile.kappa, "n": profile.n, "rel_error": profile.rel_error, "meta": profile.meta}
    buf.write("# profile " + json.dumps(header, sort_keys=True, default=_jsonable) + "\n")
    if config is not None:
        buf.write("# config " + json.dumps(config, sort_keys=True, default=_jsonable) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    dens = np.append(profile.density, np.nan)
    ldens = np.append(profile.log_density, np.nan)
    for row in zip(profile.radii, profile.cum_volume, profile.q_values, dens, profile.log_vol, ldens):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return str(obj)


def write_profile_csv(profile: GrowthProfile, path, config: Optional[dict] = None) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(profile_to_csv(profile, config))


def read_profile_csv(path) -> GrowthProfile:
    with open(path, newline="") as fh:
        return profile_from_csv(fh.read())


def profile_from_csv(text: str) -> GrowthProfile:
    header = None
    rows = []
    for line in text.splitlines():
        if line.startswith("# profile "):
            header = json.loads(line[len("# profile "):])
        elif line.startswith("#") or not line.strip():
            continue
        else:
            rows.append(line)
    if header is None:
        raise DomainError("profile CSV lacks the '# profile' metadata line")
    reader = csv.reader(rows)
    cols = next(reader)
    if tuple(cols[:4]) != CSV_COLUMNS[:4]:
        raise DomainError(f"unexpected CSV header {cols}")
    data = np.array([[float(v) for v in r] for r in reader])
    radii = data[:, 0]
    if "log_dvol_ds" in cols:
        log_density = data[:-1, cols.index("log_dvol_ds")]
    else:
        with np.errstate(divide="ignore"):
            log_density = np.log(data[:-1, 3])
    return GrowthProfile(radii, log_density, float(header["kappa"]), int(header["n"]),
                         float(header["rel_error"]), header.get("meta", {}))
