"""Immersed submanifolds of R^m and of the hyperboloid model of H^m(kappa).

Parameter points are arrays of shape (..., n); every evaluation below is
vectorized over the leading axes.  Ambient coordinates are R^m for the
Euclidean case and R^{1,m} with signature (-, +, ..., +) for the hyperbolic
case, where points satisfy <x, x>_L = 1/kappa.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.special import roots_legendre

from tone.errors import DomainError, GeometryError
from tone.spaceform import log_s_kappa

EPS = np.finfo(float).eps
REPROJECT_TOL = 1e-10
HARD_CONSTRAINT_TOL = 1e-6


@dataclass(frozen=True)
class AmbientSpace:
    kind: str  # "euclidean" | "hyperbolic"
    m: int
    kappa: float = 0.0

    def __post_init__(self):
        if self.kind not in ("euclidean", "hyperbolic"):
            raise DomainError(f"unknown ambient kind {self.kind!r}")
        if self.kind == "hyperbolic" and not self.kappa < 0:
            raise DomainError("hyperbolic ambient needs kappa < 0")
        if self.kind == "euclidean" and self.kappa != 0:
            raise DomainError("euclidean ambient has kappa = 0")
        if self.m < 2:
            raise DomainError("ambient dimension must be >= 2")

    @classmethod
    def euclidean(cls, m: int) -> "AmbientSpace":
        return cls("euclidean", m, 0.0)

    @classmethod
    def hyperbolic(cls, m: int, kappa: float = -1.0) -> "AmbientSpace":
        return cls("hyperbolic", m, kappa)

    @property
    def hyperbolic_model(self) -> bool:
        return self.kind == "hyperbolic"

    @property
    def coord_dim(self) -> int:
        return self.m + 1 if self.hyperbolic_model else self.m

    @property
    def signature(self) -> np.ndarray:
        eta = np.ones(self.coord_dim)
        if self.hyperbolic_model:
            eta[0] = -1.0
        return eta

    def inner(self, x, y):
        return np.einsum("...a,a,...a->...", x, self.signature, y)

    def constraint_violation(self, x) -> np.ndarray:
        """|kappa <x,x>_L - 1| normalized by -kappa |x|^2, i.e. in units of rounding."""
        x = np.asarray(x, dtype=float)
        if not self.hyperbolic_model:
            return np.zeros(x.shape[:-1])
        k = self.kappa
        raw = np.abs(k * self.inner(x, x) - 1.0)
        return raw / np.maximum(1.0, -k * np.einsum("...a,...a->...", x, x))

    def project(self, x):
        """Radial re-projection onto the hyperboloid; hard error if far off."""
        x = np.asarray(x, dtype=float)
        if not self.hyperbolic_model:
            return x
        viol = self.constraint_violation(x)
        if np.any(viol > HARD_CONSTRAINT_TOL) or np.any(x[..., 0] <= 0):
            raise GeometryError(
                f"point off the hyperboloid (relative violation {float(np.max(viol)):.3e})"
            )
        if np.all(viol <= REPROJECT_TOL):
            return x
        factor = np.sqrt((1.0 / self.kappa) / self.inner(x, x))
        return x * factor[..., None]

    def distance(self, x, y):
        """Geodesic distance; chord form near the diagonal, arccosh far away."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if not self.hyperbolic_model:
            return np.linalg.norm(x - y, axis=-1)
        c = math.sqrt(-self.kappa)
        ip = self.kappa * self.inner(x, y)
        d = x - y
        chord2 = np.maximum(self.inner(d, d), 0.0)
        near = 2.0 / c * np.arcsinh(c * np.sqrt(chord2) / 2.0)
        far = np.arccosh(np.maximum(ip, 1.0)) / c
        return np.where(ip > 2.0, far, near)


@dataclass(frozen=True)
class Topology:
    euler_char: Optional[int] = None
    ends: Optional[int] = None


def _unsigned_h(c: float, x):
    """sinh^2(c x / 2)/c^2, or (x/2)^2 when flat."""
    if c == 0.0:
        return (np.asarray(x) / 2.0) ** 2
    return np.sinh(c * np.asarray(x) / 2.0) ** 2 / c**2


def _inverse_h(c: float, y):
    y = np.maximum(np.asarray(y, dtype=float), 0.0)
    if c == 0.0:
        return 2.0 * np.sqrt(y)
    return 2.0 / c * np.arcsinh(c * np.sqrt(y))


@dataclass(frozen=True)
class SurfaceOfRevolution:
    """Rotationally symmetric piece: metric d sigma^2 + g(sigma)^2 dOmega_{n-1}.

    ``sigma`` is arc length along the profile.  Either the base point is the
    pole (``base_sigma is None``; then r_p = sigma) or it sits on the circle
    ``sigma = base_sigma`` at angle 0, in which case the profile must be given
    as distance-to-axis ``radius`` and ``axial`` coordinate (Euclidean
    cylindrical, or hyperbolic Fermi coordinates about a geodesic axis).
    """

    name: str
    kappa: float
    dim: int
    sigma_lo: float
    sigma_hi: float
    log_g: Callable
    sff_norm: Callable
    radius: Optional[Callable] = None
    axial: Optional[Callable] = None
    base_sigma: Optional[float] = None
    intrinsic: bool = False
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.base_sigma is not None:
            if self.dim != 2 or self.radius is None or self.axial is None:
                raise DomainError("off-axis base point needs an n = 2 profile with radius/axial")
            if not self.sigma_lo <= self.base_sigma <= self.sigma_hi:
                raise DomainError("base point outside the profile interval")
        elif self.sigma_lo != 0.0:
            raise DomainError("pole-centered profiles start at sigma = 0")

    @property
    def c(self) -> float:
        return 0.0 if self.kappa == 0 else math.sqrt(-self.kappa)

    @property
    def centered(self) -> bool:
        return self.base_sigma is None

    def g(self, sigma):
        return np.exp(self.log_g(sigma))

    def _pieces(self, sigma):
        c = self.c
        rho, z = self.radius(sigma), self.axial(sigma)
        rho0, z0 = self.radius(self.base_sigma), self.axial(self.base_sigma)
        if c == 0.0:
            stretch, s_rho, s_rho0 = 1.0, rho, rho0
        else:
            stretch = np.cosh(c * rho) * math.cosh(c * rho0)
            s_rho, s_rho0 = np.sinh(c * rho) / c, math.sinh(c * rho0) / c
        radial = _unsigned_h(c, rho - rho0) + stretch * _unsigned_h(c, z - z0)
        return radial, s_rho * s_rho0

    def distance(self, sigma, theta):
        """Extrinsic distance from the base point to (sigma, theta)."""
        sigma = np.asarray(sigma, dtype=float)
        if self.centered:
            return np.abs(sigma) + 0.0 * np.asarray(theta)
        radial, cross = self._pieces(sigma)
        return _inverse_h(self.c, radial + cross * np.sin(np.asarray(theta) / 2.0) ** 2)

    def r_min(self, sigma):
        if self.centered:
            return np.abs(np.asarray(sigma, dtype=float))
        radial, _ = self._pieces(sigma)
        return _inverse_h(self.c, radial)

    def r_max(self, sigma):
        if self.centered:
            return np.abs(np.asarray(sigma, dtype=float))
        radial, cross = self._pieces(sigma)
        return _inverse_h(self.c, radial + cross)

    def inside_fraction(self, sigma, s):
        """Fraction of the circle at ``sigma`` lying in the extrinsic ball of radius s."""
        if self.centered:
            return (np.abs(np.asarray(sigma)) < s).astype(float)
        radial, cross = self._pieces(sigma)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = (_unsigned_h(self.c, s) - radial) / cross
        ratio = np.clip(np.nan_to_num(ratio, nan=0.0), 0.0, 1.0)
        return 2.0 * np.arcsin(np.sqrt(ratio)) / math.pi


@dataclass(frozen=True)
class ImmersedGeometry:
    """A parametrized immersion (or, with ``ambient=None``, an intrinsic metric).

    ``domain`` holds one (lo, hi) interval per parameter.  ``truncation(s)``
    returns a parameter box covering the extrinsic ball of radius s.
    """

    name: str
    n: int
    ambient: Optional[AmbientSpace]
    domain: tuple
    base_point: tuple
    embed: Optional[Callable] = None
    jacobian: Optional[Callable] = None
    hessian: Optional[Callable] = None
    metric: Optional[Callable] = None
    gauss_curvature: Optional[Callable] = None
    intrinsic_distance: Optional[Callable] = None
    truncation: Optional[Callable] = None
    revolution: Optional[SurfaceOfRevolution] = None
    topology: Optional[Topology] = None
    minimal: bool = True
    length_scale: float = 1.0
    kappa_bound: Optional[float] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.domain) != self.n or len(self.base_point) != self.n:
            raise DomainError("domain/base point dimension mismatch")
        for (lo, hi), b in zip(self.domain, self.base_point):
            if not lo <= b <= hi:
                raise DomainError("base point outside the parameter domain")
        if self.ambient is None and self.metric is None:
            raise DomainError("intrinsic geometries need a metric")
        if self.ambient is not None and self.embed is None:
            raise DomainError("immersed geometries need an embedding")

    @property
    def kappa(self) -> float:
        if self.ambient is not None:
            return self.ambient.kappa
        return 0.0 if self.kappa_bound is None else self.kappa_bound

    @property
    def intrinsic(self) -> bool:
        return self.ambient is None

    def points(self, u):
        u = np.asarray(u, dtype=float)
        return self.ambient.project(self.embed(u))


def _fd_step(geom: ImmersedGeometry, power: float) -> float:
    return EPS**power * geom.length_scale


def _jacobian(geom: ImmersedGeometry, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if geom.jacobian is not None:
        return geom.jacobian(u)
    h = _fd_step(geom, 1 / 3)
    cols = []
    for i in range(geom.n):
        e = np.zeros(geom.n)
        e[i] = h
        cols.append((geom.embed(u + e) - geom.embed(u - e)) / (2 * h))
    return np.stack(cols, axis=-1)


def _hessian(geom: ImmersedGeometry, u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if geom.hessian is not None:
        return geom.hessian(u)
    n = geom.n
    if geom.jacobian is not None:
        h = _fd_step(geom, 1 / 3)
        slabs = []
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            slabs.append((geom.jacobian(u + e) - geom.jacobian(u - e)) / (2 * h))
        hess = np.stack(slabs, axis=-1)
        return 0.5 * (hess + np.swapaxes(hess, -1, -2))
    h = _fd_step(geom, 1 / 4)
    f0 = geom.embed(u)
    out = np.empty(f0.shape + (n, n))
    for i in range(n):
        for j in range(i, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = h
            ej[j] = h
            if i == j:
                val = (geom.embed(u + ei) - 2 * f0 + geom.embed(u - ei)) / h**2
            else:
                val = (
                    geom.embed(u + ei + ej)
                    - geom.embed(u + ei - ej)
                    - geom.embed(u - ei + ej)
                    + geom.embed(u - ei - ej)
                ) / (4 * h**2)
            out[..., i, j] = val
            out[..., j, i] = val
    return out


def induced_metric(geom: ImmersedGeometry, u) -> np.ndarray:
    if geom.intrinsic:
        return geom.metric(np.asarray(u, dtype=float))
    J = _jacobian(geom, u)
    return np.einsum("...ai,a,...aj->...ij", J, geom.ambient.signature, J)


def area_element(geom: ImmersedGeometry, u):
    """sqrt(det g_ij) of the induced metric."""
    det = np.linalg.det(induced_metric(geom, u))
    if np.any(det <= 0):
        raise GeometryError("degenerate immersion: det(g) <= 0")
    return np.sqrt(det)


def extrinsic_distance(geom: ImmersedGeometry, u, base=None):
    """r_p(u): ambient geodesic distance between the images of ``base`` and ``u``."""
    base = geom.base_point if base is None else base
    u = np.asarray(u, dtype=float)
    base = np.asarray(base, dtype=float)
    if geom.intrinsic:
        if geom.intrinsic_distance is None:
            raise GeometryError(f"{geom.name}: no distance for intrinsic geometry")
        return geom.intrinsic_distance(u, base)
    return geom.ambient.distance(geom.points(u), geom.points(base))


def second_fundamental_form(geom: ImmersedGeometry, u):
    """Return (|A|, |H|) where H is the (unnormalized) trace of A."""
    if geom.intrinsic:
        raise GeometryError(f"{geom.name}: intrinsic geometry has no second fundamental form")
    u = np.asarray(u, dtype=float)
    amb = geom.ambient
    eta = amb.signature
    x = geom.points(u)
    J = _jacobian(geom, u)
    V = _hessian(geom, u)
    g = np.einsum("...ai,a,...aj->...ij", J, eta, J)
    if np.any(np.linalg.det(g) <= 0):
        raise GeometryError("degenerate immersion: det(g) <= 0")
    gi = np.linalg.inv(g)
    if amb.hyperbolic_model:
        # tangential part to the hyperboloid: D_ij X + kappa g_ij x
        V = V + amb.kappa * g[..., None, :, :] * x[..., :, None, None]
    T = np.einsum("...ai,a,...ajk->...ijk", J, eta, V)
    coef = np.einsum("...li,...ijk->...ljk", gi, T)
    A = V - np.einsum("...al,...ljk->...ajk", J, coef)
    a2 = np.einsum("...ik,...jl,...aij,a,...akl->...", gi, gi, A, eta, A)
    H = np.einsum("...ij,...aij->...a", gi, A)
    h2 = np.einsum("...a,a,...a->...", H, eta, H)
    return np.sqrt(np.maximum(a2, 0.0)), np.sqrt(np.maximum(h2, 0.0))


def second_fundamental_form_norm(geom: ImmersedGeometry, u):
    return second_fundamental_form(geom, u)[0]


def mean_curvature_norm(geom: ImmersedGeometry, u):
    return second_fundamental_form(geom, u)[1]


def gaussian_curvature(geom: ImmersedGeometry, u):
    """Intrinsic Gaussian curvature (n = 2) via Brioschi on a finite-differenced metric."""
    if geom.n != 2:
        raise DomainError("Gaussian curvature needs n = 2")
    u = np.asarray(u, dtype=float)
    if geom.gauss_curvature is not None:
        return geom.gauss_curvature(u)
    h = _fd_step(geom, 1 / 4)
    du = np.array([h, 0.0])
    dv = np.array([0.0, h])

    def efg(p):
        m = induced_metric(geom, p)
        return m[..., 0, 0], m[..., 0, 1], m[..., 1, 1]

    E, F, G = efg(u)
    Eup, Fup, Gup = efg(u + du)
    Eum, Fum, Gum = efg(u - du)
    Evp, Fvp, Gvp = efg(u + dv)
    Evm, Fvm, Gvm = efg(u - dv)
    _, Fpp, _ = efg(u + du + dv)
    _, Fpm, _ = efg(u + du - dv)
    _, Fmp, _ = efg(u - du + dv)
    _, Fmm, _ = efg(u - du - dv)
    E_u, E_v = (Eup - Eum) / (2 * h), (Evp - Evm) / (2 * h)
    F_u, F_v = (Fup - Fum) / (2 * h), (Fvp - Fvm) / (2 * h)
    G_u, G_v = (Gup - Gum) / (2 * h), (Gvp - Gvm) / (2 * h)
    E_vv = (Evp - 2 * E + Evm) / h**2
    G_uu = (Gup - 2 * G + Gum) / h**2
    F_uv = (Fpp - Fpm - Fmp + Fmm) / (4 * h**2)

    def det3(rows):
        return np.linalg.det(np.stack([np.stack(r, axis=-1) for r in rows], axis=-2))

    m1 = det3(
        [
            [-E_vv / 2 + F_uv - G_uu / 2, E_u / 2, F_u - E_v / 2],
            [F_v - G_u / 2, E, F],
            [G_v / 2, F, G],
        ]
    )
    zero = np.zeros_like(E)
    m2 = det3([[zero, E_v / 2, G_u / 2], [E_v / 2, E, F], [G_u / 2, F, G]])
    return (m1 - m2) / (E * G - F**2) ** 2


def gauss_equation_norm(geom: ImmersedGeometry, u):
    """|A| from the Gauss equation |A|^2 = 2 (kappa - K) of a minimal surface."""
    if geom.n != 2 or not geom.minimal:
        raise DomainError("Gauss-equation path needs a minimal surface")
    K = gaussian_curvature(geom, u)
    return np.sqrt(np.maximum(2.0 * (geom.kappa - K), 0.0))


def gauss_legendre_box(box, nodes_per_axis, panel_order: int = 8):
    """Tensor composite Gauss-Legendre nodes and weights over a parameter box."""
    x, w = roots_legendre(panel_order)
    axes, weights = [], []
    for lo, hi in box:
        panels = max(1, math.ceil(nodes_per_axis / panel_order))
        edges = np.linspace(lo, hi, panels + 1)
        half = np.diff(edges) / 2
        mid = (edges[:-1] + edges[1:]) / 2
        axes.append((mid[:, None] + half[:, None] * x[None, :]).ravel())
        weights.append((half[:, None] * w[None, :]).ravel())
    grids = np.meshgrid(*axes, indexing="ij")
    wgrids = np.meshgrid(*weights, indexing="ij")
    u = np.stack([gr.ravel() for gr in grids], axis=-1)
    wt = np.prod(np.stack([wg.ravel() for wg in wgrids], axis=-1), axis=-1)
    return u, wt


def curvature_defect_integral(geom: ImmersedGeometry, kappa: float, s_max: float, nodes: int = 256):
    """Truncated integral of (kappa - K_M) over the parameter box covering M_p^{s_max}.

    Returns (value, truncation radius).
    """
    if geom.n != 2:
        raise DomainError("curvature defect integral needs n = 2")
    if geom.truncation is None:
        raise DomainError(f"{geom.name}: no truncation map")
    box = geom.truncation(s_max)
    u, wt = gauss_legendre_box(box, nodes)
    K = gaussian_curvature(geom, u)
    dA = area_element(geom, u)
    return float(np.sum((kappa - K) * dA * wt)), float(s_max)


def log_circle_radius(kappa: float, rho):
    """log of the intrinsic radius S_kappa(rho) of a circle at axis distance rho."""
    return log_s_kappa(kappa, rho)
