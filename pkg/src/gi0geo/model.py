"""The G0_I law for SAR intensity data.

A return ``Z`` follows ``G0_I(alpha, gamma, L)`` when it is the product of
reciprocal-Gamma backscatter and unit-mean Gamma speckle with ``L`` looks.
Its density is

.. math::

    f(z) = \\frac{L^L \\Gamma(L - \\alpha)}{\\gamma^\\alpha \\Gamma(-\\alpha)\\Gamma(L)}
           \\frac{z^{L-1}}{(\\gamma + L z)^{L - \\alpha}},
    \\qquad z > 0,

with texture ``alpha < 0``, scale ``gamma > 0`` and ``L >= 1``.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.special import betainc, gammaln, xlogy

from .errors import DegenerateSampleError, DomainError
from .special import trigamma, trigamma_difference, _integer_looks

__all__ = [
    "ModelParams",
    "FisherMatrix",
    "as_sample",
    "pdf",
    "log_pdf",
    "cdf",
    "moment",
    "sample",
    "draw",
    "fisher_matrix",
    "scale_transform",
    "texture_class",
]


@dataclass(frozen=True)
class ModelParams:
    """Parameters ``(alpha, gamma, looks)`` of a G0_I law."""

    alpha: float
    gamma: float = 1.0
    looks: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "gamma", "looks"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if not self.alpha < 0:
            raise DomainError(f"alpha must be negative, got {self.alpha}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if not self.looks >= 1:
            raise DomainError(f"looks must be at least 1, got {self.looks}")

    def with_gamma(self, gamma):
        return ModelParams(self.alpha, gamma, self.looks)

    def log_normalizer(self):
        """Logarithm of the constant factor of the density."""
        a, g, L = self.alpha, self.gamma, self.looks
        return L * math.log(L) + gammaln(L - a) - a * math.log(g) - gammaln(-a) - gammaln(L)


@dataclass(frozen=True)
class FisherMatrix:
    """Fisher information of a G0_I law in ``(alpha, gamma)`` coordinates."""

    g11: float
    g12: float
    g21: float
    g22: float

    @property
    def determinant(self):
        return self.g11 * self.g22 - self.g12 * self.g21

    def as_array(self):
        return np.array([[self.g11, self.g12], [self.g21, self.g22]])


def as_sample(values):
    """Validate intensity observations and return them as a 1-D float array.

    Raises :class:`DomainError` on negative or non-finite values and
    :class:`DegenerateSampleError` when the sample is empty or all zero.
    """
    z = np.asarray(values, dtype=float).ravel()
    if z.size == 0:
        raise DegenerateSampleError("sample is empty")
    if not np.all(np.isfinite(z)):
        raise DomainError("sample contains non-finite values")
    if np.any(z < 0):
        raise DomainError("intensities must be non-negative")
    if not np.any(z > 0):
        raise DegenerateSampleError("sample has no positive observation")
    return z


def _check_z(z):
    z = np.asarray(z, dtype=float)
    if np.any(z < 0):
        raise DomainError("density is defined for z >= 0 only")
    return z


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def log_pdf(params, z):
    """Natural log of the density, evaluated with log-gamma functions.

    ``z = 0`` gives ``-inf`` when ``looks > 1``.
    """
    z = _check_z(z)
    a, g, L = params.alpha, params.gamma, params.looks
    # log(gamma + L z) = log(gamma) + log1p(L z / gamma), accurate for small z
    out = (
        params.log_normalizer()
        + xlogy(L - 1.0, z)
        - (L - a) * (math.log(g) + np.log1p(L * z / g))
    )
    return _scalar_or_array(out)


def pdf(params, z):
    """Density of ``G0_I(alpha, gamma, looks)`` at ``z >= 0``."""
    return _scalar_or_array(np.exp(log_pdf(params, z)))


def cdf(params, z):
    """Distribution function.

    ``L Z / (gamma + L Z)`` is Beta(L, -alpha) distributed, which gives the
    closed form through the regularized incomplete beta function.
    """
    z = _check_z(z)
    L = params.looks
    x = L * z / (params.gamma + L * z)
    return _scalar_or_array(betainc(L, -params.alpha, x))


def moment(params, r):
    """Raw moment ``E[Z**r]``; ``math.inf`` unless ``alpha < -r``."""
    if r < 1 or int(r) != r:
        raise DomainError(f"moment order must be a positive integer, got {r}")
    a, g, L = params.alpha, params.gamma, params.looks
    if not a < -r:
        return math.inf
    log_m = (
        r * math.log(g / L)
        + gammaln(-a - r) - gammaln(-a)
        + gammaln(L + r) - gammaln(L)
    )
    return math.exp(log_m)


def draw(params, size, rng):
    """Draw from ``params`` with an existing numpy Generator.

    Uses ``Z = (gamma / L) * G1 / G2`` with ``G1 ~ Gamma(L)`` and
    ``G2 ~ Gamma(-alpha)``, both with unit scale.
    """
    g1 = rng.standard_gamma(params.looks, size=size)
    g2 = rng.standard_gamma(-params.alpha, size=size)
    return (params.gamma / params.looks) * g1 / g2


def sample(params, n, seed):
    """``n`` independent draws from ``params``; identical for identical ``seed``."""
    n = int(n)
    if n < 1:
        raise DomainError("sample size must be at least 1")
    return draw(params, n, np.random.default_rng(seed))


def fisher_matrix(params):
    """Fisher information matrix in ``(alpha, gamma)`` coordinates."""
    a, g, L = params.alpha, params.gamma, params.looks
    Li = _integer_looks(L)
    if Li is not None:
        g11 = trigamma_difference(a, Li)
    else:
        g11 = trigamma(-a) - trigamma(L - a)
    g12 = L / (L * g - a * g)
    g22 = -L * a / ((L - a + 1.0) * g * g)
    return FisherMatrix(g11=g11, g12=g12, g21=g12, g22=g22)


def scale_transform(values, gamma_hat):
    """Divide intensities by an estimated scale.

    Data from ``G0_I(alpha, gamma, L)`` divided by ``gamma`` follow
    ``G0_I(alpha, 1, L)``.
    """
    if not gamma_hat > 0:
        raise DomainError(f"gamma_hat must be positive, got {gamma_hat}")
    return np.asarray(values, dtype=float) / float(gamma_hat)


def texture_class(alpha):
    """Rough land-cover reading of a texture value."""
    if alpha > -3:
        return "extremely textured"
    if alpha >= -6:
        return "moderately textured"
    return "textureless"
