"""Independent reference values used to validate the numerical modules."""

from __future__ import annotations

import math

from scipy.optimize import brentq


def bessel_j0(x: float, terms: int = 60) -> float:
    """J_0 from its power series sum (-1)^k (x/2)^{2k} / (k!)^2."""
    y = -(x * x) / 4.0
    term, total = 1.0, 1.0
    for k in range(1, terms):
        term *= y / (k * k)
        total += term
        if abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


def bessel_j0_first_zero() -> float:
    """First positive zero of J_0, bracketed in [2, 3] (J_0(2) > 0 > J_0(3))."""
    return brentq(bessel_j0, 2.0, 3.0, xtol=1e-15, rtol=1e-15)


def disk_dirichlet_eigenvalue(radius: float = 1.0) -> float:
    """lambda_1 of the Euclidean disk: (j_{0,1}/radius)^2."""
    return (bessel_j0_first_zero() / radius) ** 2


def interval_dirichlet_eigenvalue(length: float = math.pi) -> float:
    return (math.pi / length) ** 2
