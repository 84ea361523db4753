"""Radial Sturm-Liouville oracle for the bottom of the spectrum.

On a rotationally symmetric geometry, radial functions reduce the Rayleigh
quotient to int u'^2 w / int u^2 w, i.e. the problem -(p u')' = lambda w u
with p = w.  A conservative finite-difference scheme gives a symmetric
tridiagonal matrix whose lowest eigenvalue is found by Sturm-count bisection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from tone import __version__
from tone import geometry as geo
from tone.errors import ConvergenceError, DomainError
from tone.parallel import ordered_map

MIN_MESH = 64
DEFAULT_TRUNCATIONS = (10.0, 20.0, 30.0)
DEFAULT_MESH = 8192


@dataclass(frozen=True)
class SturmLiouvilleProblem:
    """-(p u')' + q u = lambda w u on [a, b].

    ``log_weight`` may replace ``weight`` for weights that are only known in
    log form; it is shifted by its maximum on the mesh before use, which
    leaves the eigenvalues unchanged when p = w.  ``left`` is "dirichlet" or
    "neumann"; the right end is always Dirichlet.
    """

    a: float
    b: float
    weight: Optional[Callable] = None
    stiffness: Optional[Callable] = None
    potential: Optional[Callable] = None
    left: str = "dirichlet"
    log_weight: Optional[Callable] = None

    def __post_init__(self):
        if not self.b > self.a:
            raise DomainError("need a < b")
        if self.left not in ("dirichlet", "neumann"):
            raise DomainError(f"unknown boundary condition {self.left!r}")
        if (self.weight is None) == (self.log_weight is None):
            raise DomainError("give exactly one of weight and log_weight")
        if self.log_weight is not None and (self.stiffness is not None or self.potential is not None):
            raise DomainError("log_weight implies p = w and no potential")

    def coefficients(self, t, shift: float = 0.0):
        t = np.asarray(t, dtype=float)
        if self.log_weight is not None:
            w = np.exp(np.asarray(self.log_weight(t)) - shift)
            return w, w
        w = np.asarray(self.weight(t), dtype=float)
        p = w if self.stiffness is None else np.asarray(self.stiffness(t), dtype=float)
        return w, p


def discretize(problem: SturmLiouvilleProblem, mesh_points: int):
    """Diagonal and off-diagonal of the symmetrized control-volume matrix."""
    if mesh_points < MIN_MESH:
        raise DomainError(f"mesh_points must be >= {MIN_MESH}")
    N = int(mesh_points)
    a, b = problem.a, problem.b
    h = (b - a) / N
    t = a + h * np.arange(N + 1)
    shift = 0.0
    if problem.log_weight is not None:
        shift = float(np.max(problem.log_weight(t[1:-1])))
    _, ph = problem.coefficients(t[:-1] + h / 2, shift)
    if problem.left == "neumann":
        idx = np.arange(0, N)
        w, _ = problem.coefficients(t[idx], shift)
        w0, _ = problem.coefficients(np.array([a + h / 4]), shift)
        M = h * w
        M[0] = 0.5 * h * w0[0]
        pl = np.concatenate([[0.0], ph[: N - 1]])
        pr = ph[:N]
        nodes = t[idx]
    else:
        idx = np.arange(1, N)
        w, _ = problem.coefficients(t[idx], shift)
        M = h * w
        pl, pr = ph[: N - 1], ph[1:N]
        nodes = t[idx]
    if np.any(~(M > 0)) or np.any(~(ph > 0)):
        raise DomainError("weight and stiffness must be positive on the open interval")
    d = (pl + pr) / (h * M)
    if problem.potential is not None:
        # the control volume of node i carries mass vol_i w_i and potential vol_i q_i
        d = d + np.asarray(problem.potential(nodes), dtype=float) / problem.coefficients(nodes, shift)[0]
    e = -pr[:-1] / (h * np.sqrt(M[:-1] * M[1:]))
    return d, e


def _has_eigenvalue_below(d: list, e2: list, x: float) -> bool:
    q = d[0] - x
    if q <= 0:
        return True
    for i in range(1, len(d)):
        q = d[i] - x - e2[i - 1] / q
        if q <= 0:
            return True
    return False


def smallest_eigenvalue_tridiagonal(d, e, rtol: float = 4e-16, max_iter: int = 200) -> float:
    """Lowest eigenvalue of a symmetric tridiagonal matrix by bisection on the Sturm count."""
    d = np.asarray(d, dtype=float)
    e = np.asarray(e, dtype=float)
    radius = np.abs(np.concatenate([[0.0], e])) + np.abs(np.concatenate([e, [0.0]]))
    lo, hi = float(np.min(d - radius)), float(np.max(d + radius))
    dl, e2 = d.tolist(), (e * e).tolist()
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rtol * max(abs(lo), abs(hi)) or mid in (lo, hi):
            return mid
        if _has_eigenvalue_below(dl, e2, mid):
            hi = mid
        else:
            lo = mid
    raise ConvergenceError("Sturm bisection did not converge")


def bottom_eigenvalue(problem: SturmLiouvilleProblem, mesh_points: int) -> float:
    d, e = discretize(problem, mesh_points)
    return smallest_eigenvalue_tridiagonal(d, e)


def richardson_extrapolate(coarse: float, fine: float, order: int = 2) -> tuple:
    """(estimate, error) from mesh h and h/2 values with error O(h^order)."""
    f = 2.0**order
    return (f * fine - coarse) / (f - 1.0), abs(fine - coarse)


def extrapolate_truncation(truncations: Sequence[float], values: Sequence[float]) -> tuple:
    """Limit as T -> infinity from the model lambda + c2/T^2 (+ c3/T^3 with three or more points).

    The error bar is the gap between the two-term fit on the last two points
    and the three-term fit on the last three.  A single truncation is returned
    as is, with no truncation error attached.
    """
    T = np.asarray(truncations, dtype=float)
    L = np.asarray(values, dtype=float)
    if T.size == 0:
        raise DomainError("no truncations")
    if T.size == 1:
        return float(L[0]), 0.0
    t1, t2 = T[-2], T[-1]
    two = (t2**2 * L[-1] - t1**2 * L[-2]) / (t2**2 - t1**2)
    if T.size == 2:
        return float(two), float(abs(L[-1] - two))
    Ts, Ls = T[-3:], L[-3:]
    A = np.stack([np.ones(3), Ts**-2, Ts**-3], axis=1)
    three = float(np.linalg.solve(A, Ls)[0])
    return three, float(abs(three - two))


@dataclass(frozen=True)
class SpectrumResult:
    geometry: str
    truncations: tuple
    lambda1: tuple  # mesh-extrapolated value per truncation
    raw: tuple  # (coarse, fine) per truncation
    mesh: tuple  # (coarse, fine) mesh sizes
    extrapolated: float
    error: float
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "truncations": list(self.truncations),
            "lambda1": list(self.lambda1),
            "extrapolated": self.extrapolated,
            "error": self.error,
            "raw": [list(r) for r in self.raw],
            "mesh": list(self.mesh),
            "config": self.config,
            "version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def radial_problem(surf: geo.SurfaceOfRevolution, T: float) -> SturmLiouvilleProblem:
    """Radial reduction with w = p = g^{n-1}, truncated at geodesic distance T from the pole or waist."""
    if not T > 0:
        raise DomainError("truncation must be > 0")

    def log_w(t):
        return (surf.dim - 1) * np.asarray(surf.log_g(t))

    if surf.centered:
        if T > surf.sigma_hi:
            raise DomainError("truncation beyond the profile")
        return SturmLiouvilleProblem(0.0, float(T), log_weight=log_w, left="neumann")
    c = surf.base_sigma
    if c - T < surf.sigma_lo or c + T > surf.sigma_hi:
        raise DomainError("truncation beyond the profile")
    return SturmLiouvilleProblem(c - T, c + T, log_weight=log_w)


def tone_of_revolution_surface(
    surf: geo.SurfaceOfRevolution,
    truncations: Sequence[float] = DEFAULT_TRUNCATIONS,
    mesh: int = DEFAULT_MESH,
    config: Optional[dict] = None,
) -> SpectrumResult:
    """lambda_1 on growing truncations, Richardson in the mesh, then extrapolated in T."""
    truncations = tuple(sorted(float(T) for T in truncations))
    if not truncations:
        raise DomainError("no truncations")
    cells = [(T, N) for T in truncations for N in (mesh, 2 * mesh)]
    values = ordered_map(lambda cell: bottom_eigenvalue(radial_problem(surf, cell[0]), cell[1]), cells)
    raw = [(values[2 * i], values[2 * i + 1]) for i in range(len(truncations))]
    per_T = [richardson_extrapolate(coarse, fine)[0] for coarse, fine in raw]
    est, err = extrapolate_truncation(truncations, per_T)
    mesh_err = max(abs(f - c) for c, f in raw)
    return SpectrumResult(
        geometry=surf.name,
        truncations=truncations,
        lambda1=tuple(per_T),
        raw=tuple(raw),
        mesh=(int(mesh), int(2 * mesh)),
        extrapolated=est,
        error=max(err, mesh_err),
        config=config or {},
    )
