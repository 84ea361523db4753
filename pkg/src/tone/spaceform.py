"""Closed-form geometry of the simply connected space form K^n(kappa), kappa <= 0.

All functions accept scalars or numpy arrays for the radial argument.  For
``sqrt(-kappa) * t`` beyond a few hundred the plain values overflow; callers
that need large radii use the ``log_*`` companions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from tone.errors import DomainError

FLAT_CUTOFF = 1e-14
_LOG2 = math.log(2.0)


def _scale(kappa: float) -> float:
    if kappa > 0:
        raise DomainError(f"kappa must be <= 0, got {kappa}")
    return 0.0 if -kappa < FLAT_CUTOFF else math.sqrt(-kappa)


def _check_nonneg(t):
    if np.any(np.asarray(t) < 0):
        raise DomainError("radial argument must be >= 0")


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def log_sinh(x):
    """log(sinh x) for x > 0 without overflow."""
    x = np.asarray(x, dtype=float)
    big = x > 20.0
    with np.errstate(divide="ignore"):
        small = np.log(np.sinh(np.where(big, 1.0, x)))
    large = x - _LOG2 + np.log1p(-np.exp(-2.0 * np.where(big, x, 20.0)))
    return _out(np.where(big, large, small))


def s_kappa(kappa: float, t):
    """S_kappa(t): t when flat, sinh(sqrt(-kappa) t)/sqrt(-kappa) otherwise."""
    c = _scale(kappa)
    _check_nonneg(t)
    t = np.asarray(t, dtype=float)
    if c == 0.0:
        return _out(t.copy())
    with np.errstate(over="ignore"):
        return _out(np.sinh(c * t) / c)


def log_s_kappa(kappa: float, t):
    c = _scale(kappa)
    _check_nonneg(t)
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore"):
        if c == 0.0:
            return _out(np.log(t))
        return _out(np.asarray(log_sinh(c * t)) - math.log(c))


def c_kappa(kappa: float, t):
    """S_kappa'/S_kappa, the inward mean curvature of the model geodesic sphere."""
    c = _scale(kappa)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("c_kappa has a pole at t = 0")
    if c == 0.0:
        return _out(1.0 / t)
    return _out(c / np.tanh(c * t))


def unit_sphere_volume(n: int) -> float:
    """Volume of the unit (n-1)-sphere in R^n, 2 pi^(n/2) / Gamma(n/2)."""
    if n < 2:
        raise DomainError("n must be >= 2")
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


@dataclass(frozen=True)
class SpaceForm:
    kappa: float
    dim: int

    def __post_init__(self):
        if self.kappa > 0:
            raise DomainError("positive curvature space forms are not supported")
        if self.dim < 2:
            raise DomainError("dimension must be >= 2")

    @property
    def scale(self) -> float:
        """sqrt(-kappa), zero in the flat case."""
        return _scale(self.kappa)

    @property
    def omega(self) -> float:
        return unit_sphere_volume(self.dim)

    def s(self, t):
        return s_kappa(self.kappa, t)

    def log_s(self, t):
        return log_s_kappa(self.kappa, t)

    def c(self, t):
        return c_kappa(self.kappa, t)

    def sphere_volume(self, R):
        return sphere_volume(self, R)

    def ball_volume(self, R):
        return ball_volume(self, R)

    def log_sphere_volume(self, R):
        return log_sphere_volume(self, R)

    def log_ball_volume(self, R):
        return log_ball_volume(self, R)


def sphere_volume(sf: SpaceForm, R):
    _check_nonneg(R)
    with np.errstate(over="ignore"):
        return _out(sf.omega * np.asarray(sf.s(R)) ** (sf.dim - 1))


def log_sphere_volume(sf: SpaceForm, R):
    with np.errstate(divide="ignore"):
        return _out(math.log(sf.omega) + (sf.dim - 1) * np.asarray(sf.log_s(R)))


def _ball_quad(sf: SpaceForm, R: float) -> float:
    n = sf.dim
    val, _ = integrate.quad(
        lambda t: float(sf.s(t)) ** (n - 1), 0.0, R, epsabs=0.0, epsrel=1e-13, limit=400
    )
    return sf.omega * val


def _log_ball_scalar(sf: SpaceForm, R: float) -> float:
    n, c = sf.dim, sf.scale
    if R == 0.0:
        return -math.inf
    if c == 0.0:
        return math.log(sf.omega) + n * math.log(R) - math.log(n)
    if n == 2:
        # 2 pi (cosh(cR) - 1)/c^2 = 4 pi sinh^2(cR/2)/c^2
        return math.log(4 * math.pi) + 2 * float(log_sinh(c * R / 2)) - 2 * math.log(c)
    log_top = float(sf.log_s(R))
    lo = max(0.0, R - 40.0 / ((n - 1) * c))

    def integrand(t):
        return math.exp((n - 1) * (float(sf.log_s(t)) - log_top)) if t > 0 else 0.0

    val, _ = integrate.quad(integrand, lo, R, epsabs=0.0, epsrel=1e-13, limit=400)
    return math.log(sf.omega) + (n - 1) * log_top + math.log(val)


def log_ball_volume(sf: SpaceForm, R):
    _check_nonneg(R)
    if np.ndim(R) == 0:
        return _log_ball_scalar(sf, float(R))
    R = np.asarray(R, dtype=float)
    if sf.scale == 0.0 or sf.dim == 2:
        out = np.full(R.shape, -np.inf)
        pos = R > 0
        c = sf.scale
        if c == 0.0:
            out[pos] = math.log(sf.omega) + sf.dim * np.log(R[pos]) - math.log(sf.dim)
        else:
            out[pos] = (
                math.log(4 * math.pi) + 2 * np.asarray(log_sinh(c * R[pos] / 2)) - 2 * math.log(c)
            )
        return out
    return np.array([_log_ball_scalar(sf, float(r)) for r in R.ravel()]).reshape(R.shape)


def ball_volume(sf: SpaceForm, R):
    """Volume of the model geodesic ball; closed form when flat or n = 2."""
    _check_nonneg(R)
    n, c = sf.dim, sf.scale
    if c == 0.0:
        return _out(sf.omega * np.asarray(R, dtype=float) ** n / n)
    if n == 2:
        with np.errstate(over="ignore"):
            return _out(4 * math.pi * np.sinh(c * np.asarray(R, dtype=float) / 2) ** 2 / c**2)
    if np.ndim(R) == 0:
        return _ball_quad(sf, float(R))
    return np.array([_ball_quad(sf, float(r)) for r in np.ravel(R)]).reshape(np.shape(R))
