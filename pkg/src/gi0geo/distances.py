"""Geodesic and triangular distances between G0_I laws, and the tests built on them.

Geodesic distances come from the Fisher metric restricted to one coordinate:

* common scale, different textures: the line element is
  ``sqrt(g11(alpha)) |dalpha|`` with ``g11 = sum_{n=1..L} (n - 1 - alpha)**-2``;
  closed forms exist for one and two looks, quadrature is used otherwise;
* common texture, different scales: ``sqrt(g22) |dgamma|`` integrates to
  ``sqrt(-alpha L / (-alpha + L + 1)) |log(gamma1 / gamma2)|`` for every L.

The triangular distance ``int (f1 - f2)**2 / (f1 + f2) dz`` has no closed
form and is always integrated numerically.

Both are turned into statistics that are asymptotically chi-square with one
degree of freedom when the two textures coincide.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import betaincinv

from .errors import DomainError
from .model import ModelParams, fisher_matrix, log_pdf
from .quadrature import integrate
from .special import trigamma, trigamma_difference, _integer_looks

__all__ = [
    "CRITICAL_5PCT",
    "DistanceValue",
    "TestStatistic",
    "gd_same_scale",
    "gd_same_scale_quadrature",
    "gd_same_texture",
    "gd_same_texture_quadrature",
    "td",
    "test_statistic",
    "chi2_1_sf",
    "gd_curve",
]

CRITICAL_5PCT = 3.841459

GD_ABS_TOL = 1e-10
TD_ABS_TOL = 1e-8
TD_MAX_EVALS = 200_000
_TD_BREAK_QUANTILES = np.array([1e-3, 0.1, 0.5, 0.9, 0.999])

METHODS = ("closed_form_L1", "closed_form_L2", "quadrature_gd", "closed_form_scale", "quadrature_td")


@dataclass(frozen=True)
class DistanceValue:
    value: float
    method: str
    abs_error_estimate: float = 0.0
    converged: bool = True

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    @property
    def kind(self):
        return "TD" if self.method == "quadrature_td" else "GD"


@dataclass(frozen=True)
class TestStatistic:
    statistic: float
    p_value: float
    m: int
    n: int
    kind: str

    __test__ = False  # not a pytest class

    def rejects(self, critical=CRITICAL_5PCT):
        return self.statistic > critical


def _check_alpha(*alphas):
    for a in alphas:
        if not (math.isfinite(a) and a < 0):
            raise DomainError(f"texture must be negative, got {a}")


def _check_looks(looks):
    if not (math.isfinite(looks) and looks >= 1):
        raise DomainError(f"looks must be at least 1, got {looks}")


def _texture_metric_sqrt(looks):
    """Square root of ``g11`` as a vectorized function of alpha."""
    L = _integer_looks(looks)
    if L is not None:
        return lambda a: np.sqrt(trigamma_difference(a, L))
    return lambda a: np.sqrt(trigamma(-a) - trigamma(looks - a))


def _antiderivative_l2(alpha):
    """Antiderivative in ``x = -alpha`` of ``sqrt(1/x**2 + 1/(x + 1)**2)``."""
    x = -alpha
    q = math.sqrt(2.0 * x * x + 2.0 * x + 1.0)
    return (
        math.sqrt(2.0) * math.log(1.0 + 2.0 * x + math.sqrt(2.0) * q)
        + math.log(x * (q - x) / ((x + 1.0) * (q + x + 1.0)))
    )


def gd_same_scale_quadrature(alpha1, alpha2, looks, *, abs_tol=GD_ABS_TOL):
    """Texture geodesic distance by adaptive quadrature, for any ``looks``."""
    _check_alpha(alpha1, alpha2)
    _check_looks(looks)
    res = integrate(_texture_metric_sqrt(looks), alpha1, alpha2, abs_tol=abs_tol)
    return DistanceValue(abs(res.value), "quadrature_gd", res.abs_error, res.converged)


def gd_same_scale(alpha1, alpha2, looks):
    """Geodesic distance between ``G0_I(alpha1, g, L)`` and ``G0_I(alpha2, g, L)``.

    The common scale ``g`` does not enter. One and two looks use closed forms;
    any other number of looks (including fractional estimates) is integrated.
    """
    _check_alpha(alpha1, alpha2)
    _check_looks(looks)
    if alpha1 == alpha2:
        L = _integer_looks(looks)
        method = {1: "closed_form_L1", 2: "closed_form_L2"}.get(L, "quadrature_gd")
        return DistanceValue(0.0, method)
    L = _integer_looks(looks)
    if L == 1:
        return DistanceValue(abs(math.log(alpha2 / alpha1)), "closed_form_L1")
    if L == 2:
        value = abs(_antiderivative_l2(alpha2) - _antiderivative_l2(alpha1))
        return DistanceValue(value, "closed_form_L2")
    return gd_same_scale_quadrature(alpha1, alpha2, looks)


def gd_same_texture(gamma1, gamma2, alpha, looks):
    """Geodesic distance between ``G0_I(alpha, gamma1, L)`` and ``G0_I(alpha, gamma2, L)``."""
    if not (gamma1 > 0 and gamma2 > 0):
        raise DomainError("scales must be positive")
    _check_alpha(alpha)
    _check_looks(looks)
    factor = math.sqrt(-alpha * looks / (-alpha + looks + 1.0))
    return DistanceValue(factor * abs(math.log(gamma1 / gamma2)), "closed_form_scale")


def gd_same_texture_quadrature(gamma1, gamma2, alpha, looks, *, abs_tol=GD_ABS_TOL):
    """Scale geodesic distance by integrating ``sqrt(g22)`` from the Fisher matrix."""
    if not (gamma1 > 0 and gamma2 > 0):
        raise DomainError("scales must be positive")
    _check_alpha(alpha)
    _check_looks(looks)

    def metric(gammas):
        return np.sqrt([fisher_matrix(ModelParams(alpha, g, looks)).g22 for g in gammas])

    res = integrate(metric, gamma1, gamma2, abs_tol=abs_tol)
    return DistanceValue(abs(res.value), "quadrature_gd", res.abs_error, res.converged)


def td(params1, params2, *, abs_tol=TD_ABS_TOL, max_evals=TD_MAX_EVALS):
    """Triangular distance between two G0_I laws with equal looks.

    The half line is mapped onto ``(0, 1)`` by ``z = s u / (1 - u)`` with
    ``s = sqrt(gamma1 gamma2)``. When the evaluation budget runs out the best
    estimate is returned with ``converged=False``.
    """
    if abs(params1.looks - params2.looks) > 1e-9:
        raise DomainError("triangular distance needs equal looks")
    if params1 == params2:
        return DistanceValue(0.0, "quadrature_td")
    s = math.sqrt(params1.gamma * params2.gamma)

    def integrand(u):
        one_minus = 1.0 - u
        z = s * u / one_minus
        jac = s / (one_minus * one_minus)
        l1 = log_pdf(params1, z)
        l2 = log_pdf(params2, z)
        hi = np.maximum(l1, l2)
        # (f1 - f2)^2 / (f1 + f2) = f_max (1 - r)^2 / (1 + r), r = f_min / f_max
        r = np.exp(np.minimum(l1, l2) - hi)
        with np.errstate(invalid="ignore", over="ignore"):
            out = np.exp(hi) * (1.0 - r) ** 2 / (1.0 + r) * jac
        return np.where(np.isfinite(hi), out, 0.0)

    breaks = np.concatenate([_td_break_points(params1, s), _td_break_points(params2, s)])
    res = integrate(integrand, 0.0, 1.0, abs_tol=abs_tol, max_evals=max_evals, points=breaks)
    return DistanceValue(max(res.value, 0.0), "quadrature_td", res.abs_error, res.converged)


def _td_break_points(params, s):
    """Images in ``u`` of a few quantiles of one law, so no mass is skipped."""
    x = betaincinv(params.looks, -params.alpha, _TD_BREAK_QUANTILES)
    z = params.gamma / params.looks * x / (1.0 - x)
    return z / (s + z)


def chi2_1_sf(x):
    """Upper tail of the chi-square law with one degree of freedom."""
    if x <= 0:
        return 1.0
    return math.erfc(math.sqrt(0.5 * x))


def test_statistic(distance, m, n):
    """Scale a distance by the sample sizes into an asymptotic chi2(1) statistic.

    Geodesic distances are squared, ``mn/(m+n) s**2``; the triangular
    distance enters linearly, ``2mn/(m+n) d``.
    """
    if m < 1 or n < 1:
        raise DomainError("sample sizes must be at least 1")
    weight = m * n / (m + n)
    if distance.kind == "TD":
        stat = 2.0 * weight * distance.value
    else:
        stat = weight * distance.value ** 2
    return TestStatistic(stat, chi2_1_sf(stat), int(m), int(n), distance.kind)


test_statistic.__test__ = False


def gd_curve(alpha1, alpha2_grid, looks):
    """Texture geodesic distance from ``alpha1`` to every point of a grid."""
    return [gd_same_scale(alpha1, float(a2), looks) for a2 in alpha2_grid]
