"""Built-in example geometries with analytic derivatives and truncation maps."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import roots_legendre

from tone import geometry as geo
from tone.errors import DomainError, GeometryError
from tone.spaceform import log_s_kappa, log_sinh

TWO_PI = 2.0 * math.pi

# Range over which the spherical catenoid self-checks pass in double precision.
CATENOID_A_RANGE = (1e-3, 1e3)
_ODE_SPAN = 30.0


# --------------------------------------------------------------------------
# hyperspherical coordinates on S^{n-1}


def _sphere_factors(n: int):
    """kinds[k][j]: 0 -> 1, 1 -> cos(phi_j), 2 -> sin(phi_j) for component k."""
    kinds = np.zeros((n, n - 1), dtype=int)
    for k in range(n):
        for j in range(n - 1):
            if j < k:
                kinds[k, j] = 2
            elif j == k:
                kinds[k, j] = 1
    return kinds


def _factor(kind, phi, order):
    if kind == 0:
        return np.ones_like(phi) if order == 0 else np.zeros_like(phi)
    table = {
        (1, 0): np.cos, (1, 1): lambda p: -np.sin(p), (1, 2): lambda p: -np.cos(p),
        (2, 0): np.sin, (2, 1): np.cos, (2, 2): lambda p: -np.sin(p),
    }
    return table[(kind, order)](phi)


def _sphere_map(phi, orders):
    """Component-wise d^orders xi(phi); ``orders`` is a list of derivative counts per angle."""
    n = phi.shape[-1] + 1
    kinds = _sphere_factors(n)
    comps = []
    for k in range(n):
        val = np.ones(phi.shape[:-1])
        for j in range(n - 1):
            val = val * _factor(kinds[k, j], phi[..., j], orders[j])
        comps.append(val)
    return np.stack(comps, axis=-1)


def _pad(x, total):
    width = total - x.shape[-1]
    if width <= 0:
        return x
    return np.concatenate([x, np.zeros(x.shape[:-1] + (width,))], axis=-1)


# --------------------------------------------------------------------------
# totally geodesic H^n(kappa) in H^m(kappa), or R^n in R^m


def totally_geodesic(n: int, m: int, kappa: float) -> geo.ImmersedGeometry:
    if not 2 <= n <= m:
        raise DomainError("need 2 <= n <= m")
    if kappa > 0:
        raise DomainError("kappa must be <= 0")
    hyperbolic = kappa < 0
    c = math.sqrt(-kappa) if hyperbolic else 0.0
    ambient = geo.AmbientSpace.hyperbolic(m, kappa) if hyperbolic else geo.AmbientSpace.euclidean(m)
    dim = ambient.coord_dim

    def radial(t, order):
        # (a(t), b(t)) with X = (a, b xi) hyperbolic or X = b xi flat
        if not hyperbolic:
            b = [t, np.ones_like(t), np.zeros_like(t)][order]
            return None, b
        ch, sh = np.cosh(c * t), np.sinh(c * t)
        a = [ch / c, sh, c * ch][order]
        b = [sh / c, ch, c * sh][order]
        return a, b

    def assemble(a, vec):
        if hyperbolic:
            return _pad(np.concatenate([a[..., None], vec], axis=-1), dim)
        return _pad(vec, dim)

    def embed(u):
        t, phi = u[..., 0], u[..., 1:]
        a, b = radial(t, 0)
        return assemble(a, b[..., None] * _sphere_map(phi, [0] * (n - 1)))

    def jacobian(u):
        t, phi = u[..., 0], u[..., 1:]
        cols = []
        a1, b1 = radial(t, 1)
        cols.append(assemble(a1, b1[..., None] * _sphere_map(phi, [0] * (n - 1))))
        _, b0 = radial(t, 0)
        zero = None if not hyperbolic else np.zeros_like(t)
        for j in range(n - 1):
            orders = [0] * (n - 1)
            orders[j] = 1
            cols.append(assemble(zero, b0[..., None] * _sphere_map(phi, orders)))
        return np.stack(cols, axis=-1)

    def hessian(u):
        t, phi = u[..., 0], u[..., 1:]
        out = np.zeros(u.shape[:-1] + (dim, n, n))
        zero = None if not hyperbolic else np.zeros_like(t)
        a2, b2 = radial(t, 2)
        _, b1 = radial(t, 1)
        _, b0 = radial(t, 0)
        out[..., 0, 0] = assemble(a2, b2[..., None] * _sphere_map(phi, [0] * (n - 1)))
        for i in range(n - 1):
            orders = [0] * (n - 1)
            orders[i] = 1
            mixed = assemble(zero, b1[..., None] * _sphere_map(phi, orders))
            out[..., 0, i + 1] = mixed
            out[..., i + 1, 0] = mixed
            for j in range(n - 1):
                orders = [0] * (n - 1)
                orders[i] += 1
                orders[j] += 1
                out[..., i + 1, j + 1] = assemble(zero, b0[..., None] * _sphere_map(phi, orders))
        return out

    angles = [(0.0, math.pi)] * (n - 2) + [(0.0, TWO_PI)]
    revolution = geo.SurfaceOfRevolution(
        name="totally-geodesic",
        kappa=kappa,
        dim=n,
        sigma_lo=0.0,
        sigma_hi=math.inf,
        log_g=lambda s: log_s_kappa(kappa, np.abs(s)),
        sff_norm=lambda s: np.zeros_like(np.asarray(s, dtype=float)),
    )
    return geo.ImmersedGeometry(
        name="totally-geodesic",
        n=n,
        ambient=ambient,
        domain=tuple([(0.0, math.inf)] + angles),
        base_point=tuple([0.0] * n),
        embed=embed,
        jacobian=jacobian,
        hessian=hessian,
        truncation=lambda s: [(0.0, float(s))] + angles,
        revolution=revolution,
        topology=geo.Topology(euler_char=1, ends=1),
        length_scale=1.0 / c if hyperbolic else 1.0,
        params={"n": n, "m": m, "kappa": kappa},
    )


# --------------------------------------------------------------------------
# Euclidean catenoid


def euclidean_catenoid(scale: float = 1.0) -> geo.ImmersedGeometry:
    if not scale > 0:
        raise DomainError("scale must be > 0")

    def embed(u):
        t, th = u[..., 0], u[..., 1]
        ch = np.cosh(t)
        return scale * np.stack([ch * np.cos(th), ch * np.sin(th), t], axis=-1)

    def jacobian(u):
        t, th = u[..., 0], u[..., 1]
        ch, sh, co, si = np.cosh(t), np.sinh(t), np.cos(th), np.sin(th)
        dt = np.stack([sh * co, sh * si, np.ones_like(t)], axis=-1)
        dth = np.stack([-ch * si, ch * co, np.zeros_like(t)], axis=-1)
        return scale * np.stack([dt, dth], axis=-1)

    def hessian(u):
        t, th = u[..., 0], u[..., 1]
        ch, sh, co, si = np.cosh(t), np.sinh(t), np.cos(th), np.sin(th)
        z = np.zeros_like(t)
        tt = np.stack([ch * co, ch * si, z], axis=-1)
        tth = np.stack([-sh * si, sh * co, z], axis=-1)
        thth = np.stack([-ch * co, -ch * si, z], axis=-1)
        row0 = np.stack([tt, tth], axis=-1)
        row1 = np.stack([tth, thth], axis=-1)
        return scale * np.stack([row0, row1], axis=-1)

    revolution = geo.SurfaceOfRevolution(
        name="euclidean-catenoid",
        kappa=0.0,
        dim=2,
        sigma_lo=-math.inf,
        sigma_hi=math.inf,
        log_g=lambda s: 0.5 * np.log(scale**2 + np.asarray(s, dtype=float) ** 2),
        sff_norm=lambda s: math.sqrt(2.0) * scale / (scale**2 + np.asarray(s, dtype=float) ** 2),
        radius=lambda s: np.sqrt(scale**2 + np.asarray(s, dtype=float) ** 2),
        axial=lambda s: scale * np.arcsinh(np.asarray(s, dtype=float) / scale),
        base_sigma=0.0,
    )
    geom = geo.ImmersedGeometry(
        name="euclidean-catenoid",
        n=2,
        ambient=geo.AmbientSpace.euclidean(3),
        domain=((-math.inf, math.inf), (0.0, TWO_PI)),
        base_point=(0.0, 0.0),
        embed=embed,
        jacobian=jacobian,
        hessian=hessian,
        # |x - p| >= |z| = scale |t|
        truncation=lambda s: [(-s / scale * 1.001, s / scale * 1.001), (0.0, TWO_PI)],
        revolution=revolution,
        topology=geo.Topology(euler_char=0, ends=2),
        length_scale=scale,
        params={"scale": scale},
    )
    _check_minimal(geom, [(-3.0, 3.0), (0.0, TWO_PI)])
    return geom


# --------------------------------------------------------------------------
# spherical catenoids in H^3(kappa)


@dataclass(frozen=True)
class CatenoidProfile:
    """Unit-curvature profile of a spherical catenoid in Fermi coordinates.

    Arc length ``s`` from the waist; rho is the distance to the rotation axis
    and t the coordinate along it.  The first integral
    sinh(rho) cosh(rho) sin(psi) = a fixes everything: with
    u = sinh(2 rho)/2 one gets u^2 = a^2 + (1 + 4a^2) sinh^2(2s)/4.
    """

    a: float
    rho0: float
    t_inf: float
    conservation_error: float
    rho_mismatch: float
    _t_dense: Callable = field(repr=False)  # axial coordinate for 0 <= s <= _ODE_SPAN

    def u(self, s):
        s = np.asarray(s, dtype=float)
        b = math.sqrt(1.0 + 4.0 * self.a**2)
        w = b * np.sinh(2.0 * np.abs(s)) / 2.0
        return np.hypot(w, self.a), w

    def rho(self, s):
        s = np.abs(np.asarray(s, dtype=float))
        big = s > 20.0
        u, _ = self.u(np.where(big, 0.0, s))
        # asinh(2u) = log(4u) + O(u^-2) and 2u = b sinh(2s) up to e^{-80} once s > 20
        b = math.sqrt(1.0 + 4.0 * self.a**2)
        far = (math.log(2.0 * b) + np.asarray(log_sinh(2.0 * np.where(big, s, 21.0)))) / 2.0
        return np.where(big, far, np.arcsinh(2.0 * u) / 2.0)

    def t(self, s):
        s = np.asarray(s, dtype=float)
        inner = np.minimum(np.abs(s), _ODE_SPAN)
        return np.sign(s) * self._t_dense(inner)

    def angles(self, s):
        """(sin psi, cos psi) of the unit tangent, signed for s < 0."""
        u, w = self.u(s)
        return self.a / u, np.where(np.asarray(s) < 0, -1.0, 1.0) * w / u

    def log_sinh_rho(self, s):
        return log_sinh(self.rho(s))

    def sff_norm(self, s):
        # principal curvatures +-a / sinh^2(rho)
        return math.sqrt(2.0) * self.a * np.exp(-2.0 * self.log_sinh_rho(s))


def catenoid_profile(a: float) -> CatenoidProfile:
    rho0 = math.asinh(2.0 * a) / 2.0

    def rhs(_, y):
        r, _t, psi = y
        return [math.cos(psi), math.sin(psi) / math.cosh(r), -2.0 / math.tanh(2.0 * r) * math.sin(psi)]

    sol = solve_ivp(
        rhs,
        (0.0, _ODE_SPAN),
        [rho0, 0.0, math.pi / 2],
        method="DOP853",
        rtol=1e-13,
        atol=[1e-14, 1e-14, 1e-300],
        dense_output=True,
    )
    if not sol.success:
        raise GeometryError(f"catenoid profile integration failed: {sol.message}")
    grid = np.linspace(0.0, _ODE_SPAN, 601)
    rho, _, psi = sol.sol(grid)
    first_integral = np.sinh(rho) * np.cosh(rho) * np.sin(psi)
    conservation = float(np.max(np.abs(first_integral - a)) / a)
    b = math.sqrt(1.0 + 4.0 * a**2)
    rho_cf = np.arcsinh(2.0 * np.hypot(b * np.sinh(2 * grid) / 2, a)) / 2.0
    mismatch = float(np.max(np.abs(rho - rho_cf) / rho_cf))

    t_of = _axial_primitive(a, b)
    t_mismatch = float(np.max(np.abs(sol.sol(grid)[1] - t_of(grid))))

    return CatenoidProfile(
        a=a,
        rho0=rho0,
        t_inf=float(t_of(_ODE_SPAN)),
        conservation_error=conservation,
        rho_mismatch=max(mismatch, t_mismatch),
        _t_dense=t_of,
    )


def _axial_primitive(a: float, b: float, cells: int = 600, order: int = 16):
    """t(s) = int_0^s sin(psi)/cosh(rho) by Gauss cells; the integrand is closed form."""
    x, w = roots_legendre(order)

    def rate(s):
        u = np.hypot(b * np.sinh(2.0 * s) / 2.0, a)
        cosh2 = (np.sqrt(1.0 + 4.0 * u**2) + 1.0) / 2.0
        return a / (u * np.sqrt(cosh2))

    def gauss(lo, hi):
        half = (hi - lo) / 2.0
        return np.sum(rate((lo + hi)[..., None] / 2.0 + half[..., None] * x) * w, axis=-1) * half

    # the integrand varies on the scale a near the waist, so cells grow geometrically from there
    first = 1e-2 * min(a, 1.0) / b
    edges = np.concatenate([[0.0], np.geomspace(first, _ODE_SPAN, cells)])
    prim = np.concatenate([[0.0], np.cumsum(gauss(edges[:-1], edges[1:]))])

    def t_of(s):
        s = np.asarray(s, dtype=float)
        k = np.clip(np.searchsorted(edges, s, side="right") - 1, 0, cells - 1)
        return prim[k] + gauss(edges[k], s)

    return t_of


def hyperbolic_catenoid(a: float = 1.0, kappa: float = -1.0) -> geo.ImmersedGeometry:
    lo, hi = CATENOID_A_RANGE
    if not lo <= a <= hi:
        raise DomainError(f"catenoid parameter a={a} outside the validated range [{lo}, {hi}]")
    if not kappa < 0:
        raise DomainError("hyperbolic catenoid needs kappa < 0")
    c = math.sqrt(-kappa)
    prof = catenoid_profile(a)
    if prof.conservation_error > 1e-8:
        raise GeometryError(f"first integral drift {prof.conservation_error:.2e} exceeds 1e-8")
    if prof.rho_mismatch > 1e-9:
        raise GeometryError(f"profile ODE disagrees with closed form ({prof.rho_mismatch:.2e})")

    def frame(sig):
        s = c * sig
        rho = prof.rho(s)
        t = prof.t(s)
        sin_psi, cos_psi = prof.angles(s)
        return rho, t, sin_psi, cos_psi

    def embed(u):
        rho, t, _, _ = frame(u[..., 0])
        th = u[..., 1]
        ch, sh = np.cosh(rho), np.sinh(rho)
        return np.stack(
            [ch * np.cosh(t), ch * np.sinh(t), sh * np.cos(th), sh * np.sin(th)], axis=-1
        ) / c

    def _derivs(u):
        rho, t, sp, cp = frame(u[..., 0])
        th = u[..., 1]
        ch, sh, cT, sT = np.cosh(rho), np.sinh(rho), np.cosh(t), np.sinh(t)
        co, si = np.cos(th), np.sin(th)
        dpsi = -2.0 / np.tanh(2.0 * rho) * sp
        dr, dt = cp, sp / ch
        ddr = -sp * dpsi
        ddt = (cp * dpsi * ch - sp * sh * dr) / ch**2
        return rho, t, ch, sh, cT, sT, co, si, dr, dt, ddr, ddt

    def jacobian(u):
        _, _, ch, sh, cT, sT, co, si, dr, dt, _, _ = _derivs(u)
        # d/dsigma = c d/ds on the unit profile; the 1/c prefactor cancels it
        Xs = np.stack([sh * dr * cT + ch * sT * dt, sh * dr * sT + ch * cT * dt, ch * dr * co, ch * dr * si], axis=-1)
        z = np.zeros_like(co)
        Xth = np.stack([z, z, -sh * si, sh * co], axis=-1) / c
        return np.stack([Xs, Xth], axis=-1)

    def hessian(u):
        _, _, ch, sh, cT, sT, co, si, dr, dt, ddr, ddt = _derivs(u)
        z = np.zeros_like(co)
        Xss = c * np.stack(
            [
                ch * dr**2 * cT + sh * ddr * cT + 2 * sh * dr * sT * dt + ch * cT * dt**2 + ch * sT * ddt,
                ch * dr**2 * sT + sh * ddr * sT + 2 * sh * dr * cT * dt + ch * sT * dt**2 + ch * cT * ddt,
                (sh * dr**2 + ch * ddr) * co,
                (sh * dr**2 + ch * ddr) * si,
            ],
            axis=-1,
        )
        Xsth = np.stack([z, z, -ch * dr * si, ch * dr * co], axis=-1)
        Xthth = np.stack([z, z, -sh * co, -sh * si], axis=-1) / c
        row0 = np.stack([Xss, Xsth], axis=-1)
        row1 = np.stack([Xsth, Xthth], axis=-1)
        return np.stack([row0, row1], axis=-1)

    revolution = geo.SurfaceOfRevolution(
        name="catenoid-h3",
        kappa=kappa,
        dim=2,
        sigma_lo=-math.inf,
        sigma_hi=math.inf,
        log_g=lambda sig: prof.log_sinh_rho(c * np.asarray(sig, dtype=float)) - math.log(c),
        sff_norm=lambda sig: c * prof.sff_norm(c * np.asarray(sig, dtype=float)),
        radius=lambda sig: prof.rho(c * np.asarray(sig, dtype=float)) / c,
        axial=lambda sig: prof.t(c * np.asarray(sig, dtype=float)) / c,
        base_sigma=0.0,
        meta={"a": a, "rho0": prof.rho0 / c, "t_inf": prof.t_inf / c},
    )

    def truncation(s):
        reach = _profile_reach(revolution, float(s))
        return [(-reach, reach), (0.0, TWO_PI)]

    geom = geo.ImmersedGeometry(
        name="catenoid-h3",
        n=2,
        ambient=geo.AmbientSpace.hyperbolic(3, kappa),
        domain=((-math.inf, math.inf), (0.0, TWO_PI)),
        base_point=(0.0, 0.0),
        embed=embed,
        jacobian=jacobian,
        hessian=hessian,
        truncation=truncation,
        revolution=revolution,
        topology=geo.Topology(euler_char=0, ends=2),
        length_scale=1.0 / c,
        params={"a": a, "kappa": kappa},
    )
    # beyond |c sigma| ~ 6 the hyperboloid coordinates lose the digits needed for H
    _check_minimal(geom, [(-6.0 / c, 6.0 / c), (0.0, TWO_PI)])
    return geom


def _profile_reach(rev: geo.SurfaceOfRevolution, s: float) -> float:
    """Smallest |sigma| (up to doubling) whose circle lies outside the ball of radius s."""
    reach = max(s, 1e-3)
    while float(rev.r_min(reach)) <= s or float(rev.r_min(-reach)) <= s:
        reach *= 2.0
        if reach > 1e8:
            raise GeometryError("profile never leaves the extrinsic ball")
    return reach


def _check_minimal(geom: geo.ImmersedGeometry, box, tol: float = 1e-6):
    u, _ = geo.gauss_legendre_box(box, 24)
    H = geo.mean_curvature_norm(geom, u)
    worst = float(np.max(H)) * geom.length_scale
    if worst > tol:
        raise GeometryError(f"{geom.name}: mean curvature self-check failed (|H| = {worst:.2e})")


# --------------------------------------------------------------------------
# intrinsic warped surfaces dr^2 + f(r)^2 dtheta^2


def _warp_parts(epsilon: float, c: float, r):
    r = np.asarray(r, dtype=float)
    th = np.tanh(c * r)
    sech2 = 1.0 - th**2
    h = th**2
    h1 = 2.0 * c * th * sech2
    h2 = 2.0 * c**2 * sech2 * (sech2 - 2.0 * th**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        # 2 c coth(cr) h' -> 4 c^2 as r -> 0
        cross = np.where(c * r > 1e-8, 2.0 * c / np.where(th == 0, 1.0, th) * h1, 4.0 * c**2)
    return h, cross + h2


def warped_intrinsic_surface(epsilon: float = 0.1, kappa: float = -1.0) -> geo.ImmersedGeometry:
    """Metric dr^2 + f(r)^2 dtheta^2 with f = S_kappa(r) (1 + epsilon tanh^2(sqrt(-kappa) r)).

    K_M = kappa - epsilon (2 S' h' + S h'')/f <= kappa for epsilon >= 0, and
    f/S_kappa -> 1 + epsilon.
    """
    if not kappa < 0:
        raise DomainError("warped surface needs kappa < 0")
    c = math.sqrt(-kappa)

    def log_f(r):
        r = np.abs(np.asarray(r, dtype=float))
        h, _ = _warp_parts(epsilon, c, r)
        return np.asarray(log_s_kappa(kappa, r)) + np.log1p(epsilon * h)

    def gauss_k(u):
        r = np.abs(np.asarray(u)[..., 0])
        h, num = _warp_parts(epsilon, c, r)
        return kappa - epsilon * num / (1.0 + epsilon * h)

    def metric(u):
        r = np.asarray(u)[..., 0]
        out = np.zeros(r.shape + (2, 2))
        out[..., 0, 0] = 1.0
        out[..., 1, 1] = np.exp(2.0 * log_f(r))
        return out

    def distance(u, base):
        if np.any(np.asarray(base)[..., 0] != 0.0):
            raise GeometryError("warped surface distances are only known from the pole")
        return np.abs(np.asarray(u)[..., 0])

    report = _warp_curvature_check(log_f, kappa, c)
    if report["max_excess"] > 1e-6 * abs(kappa):
        raise GeometryError(
            f"curvature condition K_M <= kappa violated at r = {report['worst_r']:.4g} "
            f"(K_M - kappa = {report['max_excess']:.3e})"
        )
    if report["ratio_spread"] > 0.01 * (1 + abs(epsilon)):
        raise GeometryError("f/S_kappa does not stabilize")

    revolution = geo.SurfaceOfRevolution(
        name="warped-surface",
        kappa=kappa,
        dim=2,
        sigma_lo=0.0,
        sigma_hi=math.inf,
        log_g=log_f,
        sff_norm=_no_sff,
        intrinsic=True,
        meta=report,
    )
    return geo.ImmersedGeometry(
        name="warped-surface",
        n=2,
        ambient=None,
        domain=((0.0, math.inf), (0.0, TWO_PI)),
        base_point=(0.0, 0.0),
        metric=metric,
        gauss_curvature=gauss_k,
        intrinsic_distance=distance,
        truncation=lambda s: [(0.0, float(s)), (0.0, TWO_PI)],
        revolution=revolution,
        topology=geo.Topology(euler_char=1, ends=1),
        minimal=False,
        length_scale=1.0 / c,
        kappa_bound=kappa,
        params={"epsilon": epsilon, "kappa": kappa},
    )


def _no_sff(_):
    raise GeometryError("intrinsic geometry has no second fundamental form")


def _warp_curvature_check(log_f, kappa: float, c: float, r_max: float = 40.0, nodes: int = 2000):
    """Finite-difference K_M = -f''/f at nodes; returns the worst excess over kappa."""
    r = np.linspace(0.01, r_max, nodes) / c
    lf = log_f(r)

    def second(h):
        return (np.exp(log_f(r + h) - lf) - 2.0 + np.exp(log_f(r - h) - lf)) / h**2

    # Richardson on the step removes the O(h^2) bias; rounding stays near 1e-10
    h = 1e-3 / c
    K = -(4.0 * second(h) - second(2.0 * h)) / 3.0
    excess = K - kappa
    i = int(np.argmax(excess))
    f_over_s = np.exp(lf - np.asarray(log_s_kappa(kappa, r)))
    tail = f_over_s[-nodes // 4:]
    return {
        "max_excess": float(excess[i]),
        "worst_r": float(r[i]),
        "sup_ratio": float(np.max(f_over_s)),
        "ratio_spread": float((tail.max() - tail.min()) / tail.max()),
    }


# --------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    params: dict  # name -> (type, default, description)
    build: Callable
    targets: tuple  # (quantity, value, provenance)
    description: str = ""

    def construct(self, **kwargs) -> geo.ImmersedGeometry:
        unknown = set(kwargs) - set(self.params)
        if unknown:
            raise DomainError(f"{self.name}: unknown parameters {sorted(unknown)}")
        args = {k: typ(kwargs.get(k, default)) for k, (typ, default, _) in self.params.items()}
        return self.build(**args)


CATALOG = {
    "totally-geodesic": CatalogEntry(
        name="totally-geodesic",
        params={
            "n": (int, 2, "intrinsic dimension"),
            "m": (int, 3, "ambient dimension"),
            "kappa": (float, -1.0, "ambient curvature"),
        },
        build=totally_geodesic,
        targets=(
            ("Q(s)", "1", "trivial"),
            ("lambda*", "-(n-1)^2 kappa / 4", "published"),
        ),
        description="geodesic polar chart of H^n(kappa) (or R^n) inside H^m(kappa) (or R^m)",
    ),
    "euclidean-catenoid": CatalogEntry(
        name="euclidean-catenoid",
        params={"scale": (float, 1.0, "waist radius")},
        build=euclidean_catenoid,
        targets=(
            ("int |A|^2", "8 pi", "derived"),
            ("sup Q", "2", "derived"),
            ("lambda*", "0", "published"),
        ),
        description="scale (cosh t cos th, cosh t sin th, t) in R^3",
    ),
    "catenoid-h3": CatalogEntry(
        name="catenoid-h3",
        params={
            "a": (float, 1.0, "first-integral constant sinh(rho) cosh(rho) sin(psi)"),
            "kappa": (float, -1.0, "ambient curvature"),
        },
        build=hyperbolic_catenoid,
        targets=(
            ("lambda*", "-kappa / 4", "published"),
            ("int |A|^2", "finite", "published"),
            ("sup Q", "<= ends = 2", "derived"),
        ),
        description="spherical catenoid about a geodesic axis in H^3(kappa)",
    ),
    "warped-surface": CatalogEntry(
        name="warped-surface",
        params={
            "epsilon": (float, 0.1, "warp amplitude"),
            "kappa": (float, -1.0, "curvature bound"),
        },
        build=warped_intrinsic_surface,
        targets=(
            ("K_M <= kappa", "holds", "derived"),
            ("sup Q", "1 + epsilon", "derived"),
            ("lambda*", "-kappa / 4", "derived"),
        ),
        description="intrinsic metric dr^2 + (S_kappa(r)(1 + eps tanh^2(sqrt(-kappa) r)))^2 dth^2",
    ),
}


def build(name: str, **params) -> geo.ImmersedGeometry:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise DomainError(f"unknown geometry {name!r}; known: {sorted(CATALOG)}") from None
    return entry.construct(**params)
