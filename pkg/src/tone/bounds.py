"""Lower and upper bounds for the fundamental tone from a volume growth profile.

Upper bounds come from the radial test function
phi(t) = sin(2 pi (t - R/2)/R) / S_kappa(t)^((m-1)/2) on [R/2, R], whose
Rayleigh quotient is integrated against the coarea density of the profile.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

import numpy as np

from tone import __version__
from tone.errors import ConvergenceError, DomainError
from tone.parallel import ordered_map
from tone.growth import GrowthProfile, doubling_constant, log_growth_delta
from tone.spaceform import SpaceForm, c_kappa, log_s_kappa


def _check_n(n: int):
    if n < 2:
        raise DomainError("n must be >= 2")


def mckean_lower(n: int, kappa: float) -> float:
    """(n-1)^2 (-kappa)/4."""
    _check_n(n)
    if kappa > 0:
        raise DomainError("kappa must be <= 0")
    return (n - 1) ** 2 * (0.0 - kappa) / 4.0


def cheeger_lower(n: int, kappa: float) -> float:
    """h^2/4 with the isoperimetric constant h >= (n-1) sqrt(-kappa)."""
    _check_n(n)
    if kappa > 0:
        raise DomainError("kappa must be <= 0")
    h = (n - 1) * math.sqrt(0.0 - kappa)
    return h * h / 4.0


def _radius(R: float) -> float:
    if not R > 0:
        raise DomainError("R must be > 0")
    return float(R)


def lambda_R(m: int, kappa: float, R: float) -> float:
    """(m-1)^2/4 C(R/2)^2 + 8 pi^2/R^2 + 4 pi (m-1)/R C(R/2)."""
    R = _radius(R)
    C = c_kappa(kappa, R / 2)
    return (m - 1) ** 2 / 4.0 * C * C + 8 * math.pi**2 / R**2 + 4 * math.pi * (m - 1) / R * C


def f_R(m: int, kappa: float, R: float) -> float:
    """(m-1)^2/4 C(R/2)^2 + 4 pi^2/R^2 + 2 (m-1) pi/R C(R/2)."""
    R = _radius(R)
    C = c_kappa(kappa, R / 2)
    return (m - 1) ** 2 / 4.0 * C * C + 4 * math.pi**2 / R**2 + 2 * (m - 1) * math.pi / R * C


def ball_to_sphere_factor(n: int, kappa: float, R: float) -> float:
    """Vol(B_R)/Vol(S_R) * 4/R."""
    sf = SpaceForm(kappa, n)
    R = _radius(R)
    return math.exp(sf.log_ball_volume(R) - sf.log_sphere_volume(R)) * 4.0 / R


@dataclass(frozen=True)
class TestFunction:
    R: float
    kappa: float
    m: int

    __test__ = False  # not a pytest class

    def __post_init__(self):
        _radius(self.R)
        if self.kappa > 0:
            raise DomainError("kappa must be <= 0")

    @property
    def freq(self) -> float:
        return 2.0 * math.pi / self.R

    def _parts(self, t):
        """(sin, d/dt of the sine over S^{(m-1)/2} factor, log S^{-(m-1)/2}) on the support."""
        t = np.asarray(t, dtype=float)
        arg = self.freq * (t - self.R / 2)
        sn, cs = np.sin(arg), np.cos(arg)
        C = np.asarray(c_kappa(self.kappa, t))
        deriv = self.freq * cs - (self.m - 1) / 2.0 * C * sn
        return sn, deriv, -(self.m - 1) / 2.0 * np.asarray(log_s_kappa(self.kappa, t))

    def _support(self, t):
        t = np.asarray(t, dtype=float)
        return (t >= self.R / 2) & (t <= self.R)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        inside = self._support(t)
        safe = np.where(inside, t, 0.75 * self.R)
        sn, _, log_amp = self._parts(safe)
        return np.where(inside, sn * np.exp(log_amp), 0.0)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        inside = self._support(t)
        safe = np.where(inside, t, 0.75 * self.R)
        _, d, log_amp = self._parts(safe)
        return np.where(inside, d * np.exp(log_amp), 0.0)


def _check_cover(profile: GrowthProfile, R: float):
    if R / 2 >= profile.s_max:
        raise DomainError(f"empty support: R/2 = {R / 2} beyond the profile radius {profile.s_max}")
    if R > profile.s_max * (1 + 1e-12):
        raise DomainError(f"profile covers [0, {profile.s_max}] but R = {R}")


def rayleigh_upper(profile: GrowthProfile, m: int, kappa: float, R: float) -> float:
    """Midpoint-rule Rayleigh quotient of the test function against the profile's density."""
    R = _radius(R)
    _check_cover(profile, R)
    lo = np.maximum(profile.radii[:-1], R / 2)
    hi = np.minimum(profile.radii[1:], R)
    use = (hi > lo) & np.isfinite(profile.log_density)
    if not np.any(use):
        raise ConvergenceError("no profile mass inside the support")
    lo, hi = lo[use], hi[use]
    mid = (lo + hi) / 2.0
    phi = TestFunction(R, kappa, m)
    sn, d, log_amp = phi._parts(mid)
    log_w = profile.log_density[use] + np.log(hi - lo) + 2.0 * log_amp
    w = np.exp(log_w - np.max(log_w))
    den = float(np.sum(sn * sn * w))
    if not den > 0:
        raise ConvergenceError("zero denominator in the Rayleigh quotient")
    return float(np.sum(d * d * w)) / den


def assembled_upper(profile: GrowthProfile, m: int, kappa: float, R: float) -> float:
    """Q(R)/Q(R/2) [Vol(B_R)/Vol(S_R) 4/R F(R) delta(R) + Lambda(R)]."""
    R = _radius(R)
    _check_cover(profile, R)
    delta = log_growth_delta(profile, R)
    ratio = math.exp(delta)
    factor = ball_to_sphere_factor(profile.n, kappa, R)
    return ratio * (factor * f_R(m, kappa, R) * delta + lambda_R(m, kappa, R))


def two_sided_estimate(profile: GrowthProfile, m: int, kappa: float) -> tuple:
    """[L, C L] with L = (m-1)^2 (-kappa)/4 and C the doubling constant of the profile."""
    low = (m - 1) ** 2 * (0.0 - kappa) / 4.0
    return low, doubling_constant(profile) * low


@dataclass(frozen=True)
class BoundEntry:
    R: float
    rayleigh_upper: float
    assembled_upper: float
    lambda_R: float
    F_R: float
    delta_R: float
    q_ratio: float


def _entry_dict(entry: BoundEntry) -> dict:
    """Report keys; the assembled bound is published as ``paper_upper`` in the JSON schema."""
    d = asdict(entry)
    d["paper_upper"] = d.pop("assembled_upper")
    return d


@dataclass(frozen=True)
class BoundReport:
    geometry: str
    n: int
    m: int
    kappa: float
    lower_mckean: float
    lower_cheeger: float
    entries: tuple
    verdict: tuple
    rel_error: float
    two_sided: tuple
    config: dict = field(default_factory=dict)

    @property
    def schedule(self) -> list:
        return [e.R for e in self.entries]

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            "n": self.n,
            "m": self.m,
            "kappa": self.kappa,
            "lower": {"mckean": self.lower_mckean, "cheeger": self.lower_cheeger},
            "schedule": [_entry_dict(e) for e in self.entries],
            "verdict": {"lower": self.verdict[0], "upper": self.verdict[1]},
            "two_sided": {"lower": self.two_sided[0], "upper": self.two_sided[1]},
            "profile_rel_error": self.rel_error,
            "config": self.config,
            "version": __version__,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def assemble_report(
    geometry: str,
    profile: GrowthProfile,
    schedule: Sequence[float],
    kappa: Optional[float] = None,
    m: Optional[int] = None,
    config: Optional[dict] = None,
) -> BoundReport:
    """Every bound at each R of the schedule; the upper verdict is inflated by the profile error."""
    if len(schedule) == 0:
        raise DomainError("empty schedule")
    kappa = profile.kappa if kappa is None else kappa
    n = profile.n
    m = n if m is None else int(m)
    radii = sorted(float(r) for r in schedule)
    for R in radii:
        if not 0 < R <= profile.s_max * (1 + 1e-12):
            raise DomainError(f"schedule radius {R} outside (0, {profile.s_max}]")

    def entry(R: float) -> BoundEntry:
        delta = log_growth_delta(profile, R)
        return BoundEntry(
            R=R,
            rayleigh_upper=rayleigh_upper(profile, m, kappa, R),
            assembled_upper=assembled_upper(profile, m, kappa, R),
            lambda_R=lambda_R(m, kappa, R),
            F_R=f_R(m, kappa, R),
            delta_R=delta,
            q_ratio=math.exp(delta),
        )

    entries = ordered_map(entry, radii)
    lower = max(mckean_lower(n, kappa), cheeger_lower(n, kappa))
    best = min(min(e.rayleigh_upper, e.assembled_upper) for e in entries)
    upper = best * (1.0 + profile.rel_error)
    return BoundReport(
        geometry=geometry,
        n=n,
        m=m,
        kappa=kappa,
        lower_mckean=mckean_lower(n, kappa),
        lower_cheeger=cheeger_lower(n, kappa),
        entries=tuple(entries),
        verdict=(lower, upper),
        rel_error=profile.rel_error,
        two_sided=two_sided_estimate(profile, m, kappa),
        config=config or {},
    )

