"""Maximum-likelihood estimation for G0_I samples with known looks.

The likelihood is maximized in the unconstrained coordinates
``a = log(-alpha)`` and ``g = log(gamma)`` with L-BFGS-B and analytic
gradients. ``a`` is box-constrained so that ``alpha`` stays in
``[ALPHA_MIN, ALPHA_MAX]``; estimates that land on a bound are flagged as
clamped.

Score of the mean log-likelihood for ``n`` observations::

    d/dalpha = psi(-alpha) - psi(L - alpha) + mean(log((gamma + L z) / gamma))
    d/dgamma = -alpha / gamma - (L - alpha) * mean(1 / (gamma + L z))
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import minimize

from .errors import DegenerateSampleError, DomainError, SampleTooSmallError
from .model import ModelParams, as_sample, log_pdf
from .special import digamma

__all__ = [
    "ALPHA_MIN",
    "ALPHA_MAX",
    "MIN_SAMPLE_SIZE",
    "FitResult",
    "log_likelihood",
    "fit_ml",
    "fit_alpha_fixed_gamma",
    "estimate_enl",
]

ALPHA_MIN = -20.0
ALPHA_MAX = -1.0
MIN_SAMPLE_SIZE = 20
MIN_ENL_SAMPLE_SIZE = 50

GRAD_TOL = 1e-6
STEP_TOL = 1e-8

_A_BOUNDS = (math.log(-ALPHA_MAX), math.log(-ALPHA_MIN))
_CLAMP_EPS = 1e-9


@dataclass(frozen=True)
class FitResult:
    alpha_hat: float
    gamma_hat: float
    log_likelihood: float
    converged: bool
    iterations: int
    clamped: bool
    n: int = 0
    looks: float = 1.0

    @property
    def params(self):
        return ModelParams(self.alpha_hat, self.gamma_hat, self.looks)


def log_likelihood(values, params):
    """Sum of log-densities; ``-inf`` if a zero occurs with ``looks > 1``."""
    z = np.asarray(values, dtype=float).ravel()
    if np.any(z < 0):
        raise DomainError("intensities must be non-negative")
    return float(np.sum(log_pdf(params, z)))


class _MeanLogLik:
    """Mean log-likelihood and its gradient in ``(a, g)`` coordinates.

    The ``(L - 1) * mean(log z)`` term does not depend on the parameters and
    is kept apart so that zero intensities do not break the optimization.
    """

    def __init__(self, z, looks):
        self.L = float(looks)
        self.Lz = self.L * z
        self.n = z.size
        with np.errstate(divide="ignore"):
            self.const = (self.L - 1.0) * float(np.mean(np.log(z))) if self.L != 1.0 else 0.0
        self.base = self.L * math.log(self.L) - math.lgamma(self.L)

    def value_and_grad(self, a, g, need_g_grad=True):
        L = self.L
        alpha = -math.exp(a)
        gamma = math.exp(g)
        t = self.Lz / gamma
        mlog = float(np.mean(np.log1p(t)))
        val = (
            self.base
            + math.lgamma(L - alpha) - math.lgamma(-alpha)
            - alpha * g
            - (L - alpha) * (g + mlog)
        )
        d_alpha = digamma(-alpha) - digamma(L - alpha) + mlog
        grad_a = d_alpha * alpha
        if not need_g_grad:
            return val, grad_a, None
        # gamma * d/dgamma
        grad_g = -alpha - (L - alpha) * float(np.mean(1.0 / (1.0 + t)))
        return val, grad_a, grad_g


def _prepare(values, looks):
    z = as_sample(values)
    if z.size < MIN_SAMPLE_SIZE:
        raise SampleTooSmallError(
            f"at least {MIN_SAMPLE_SIZE} observations are required, got {z.size}"
        )
    if not looks >= 1:
        raise DomainError(f"looks must be at least 1, got {looks}")
    return z


def _projected_grad_norm(x, grad):
    # components pushing out of an active bound do not count
    g = np.array(grad, dtype=float)
    a = x[0]
    if a <= _A_BOUNDS[0] + _CLAMP_EPS and g[0] < 0:
        g[0] = 0.0
    if a >= _A_BOUNDS[1] - _CLAMP_EPS and g[0] > 0:
        g[0] = 0.0
    return float(np.max(np.abs(g)))


def _run(objective, x0, bounds, maxiter):
    history = {"x": x0.copy(), "step": math.inf}

    def callback(xk):
        history["step"] = float(np.max(np.abs(xk - history["x"])))
        history["x"] = xk.copy()

    res = minimize(
        objective,
        x0,
        jac=True,
        method="L-BFGS-B",
        bounds=bounds,
        callback=callback,
        options={"maxiter": maxiter, "gtol": 1e-10, "ftol": 1e-15, "maxcor": 10},
    )
    return res, history["step"]


def _alpha_start(alpha0):
    a0 = math.log(-alpha0)
    return min(max(a0, _A_BOUNDS[0]), _A_BOUNDS[1])


def fit_ml(values, looks, *, alpha0=-2.0, maxiter=200):
    """Joint maximum-likelihood estimate of ``(alpha, gamma)``.

    Parameters
    ----------
    values : array_like
        Intensities, at least ``MIN_SAMPLE_SIZE`` of them.
    looks : float
        Known (or previously estimated) number of looks.
    alpha0 : float
        Starting texture; the starting scale is ``mean(z) * (-alpha0 - 1)``,
        the value that matches the first moment.

    Returns
    -------
    FitResult
        Non-convergence is reported through ``converged=False`` with the best
        point found, never raised.
    """
    z = _prepare(values, looks)
    f = _MeanLogLik(z, looks)
    gamma0 = float(np.mean(z)) * max(-alpha0 - 1.0, 0.1)
    x0 = np.array([_alpha_start(alpha0), math.log(gamma0)])

    def objective(x):
        v, ga, gg = f.value_and_grad(x[0], x[1])
        return -v, np.array([-ga, -gg])

    res, last_step = _run(objective, x0, [_A_BOUNDS, (None, None)], maxiter)
    x = res.x
    _, ga, gg = f.value_and_grad(x[0], x[1])
    converged = _projected_grad_norm(x, (ga, gg)) < GRAD_TOL or last_step < STEP_TOL
    alpha = -math.exp(x[0])
    gamma = math.exp(x[1])
    clamped = x[0] <= _A_BOUNDS[0] + _CLAMP_EPS or x[0] >= _A_BOUNDS[1] - _CLAMP_EPS
    if clamped:
        alpha = ALPHA_MAX if x[0] <= _A_BOUNDS[0] + _CLAMP_EPS else ALPHA_MIN
    return FitResult(
        alpha_hat=alpha,
        gamma_hat=gamma,
        log_likelihood=f.n * (-float(res.fun) + f.const),
        converged=bool(converged),
        iterations=int(res.nit),
        clamped=bool(clamped),
        n=int(f.n),
        looks=float(looks),
    )


def fit_alpha_fixed_gamma(values, gamma, looks, *, alpha0=-2.0, maxiter=200):
    """Maximum-likelihood texture estimate with the scale held at ``gamma``.

    Used on data already divided by their estimated scale, so ``gamma`` is
    normally 1.
    """
    z = _prepare(values, looks)
    if not gamma > 0:
        raise DomainError(f"gamma must be positive, got {gamma}")
    f = _MeanLogLik(z, looks)
    g = math.log(gamma)
    x0 = np.array([_alpha_start(alpha0)])

    def objective(x):
        v, ga, _ = f.value_and_grad(x[0], g, need_g_grad=False)
        return -v, np.array([-ga])

    res, last_step = _run(objective, x0, [_A_BOUNDS], maxiter)
    x = res.x
    _, ga, _ = f.value_and_grad(x[0], g, need_g_grad=False)
    converged = _projected_grad_norm(x, (ga,)) < GRAD_TOL or last_step < STEP_TOL
    alpha = -math.exp(x[0])
    clamped = x[0] <= _A_BOUNDS[0] + _CLAMP_EPS or x[0] >= _A_BOUNDS[1] - _CLAMP_EPS
    if clamped:
        alpha = ALPHA_MAX if x[0] <= _A_BOUNDS[0] + _CLAMP_EPS else ALPHA_MIN
    return FitResult(
        alpha_hat=alpha,
        gamma_hat=float(gamma),
        log_likelihood=f.n * (-float(res.fun) + f.const),
        converged=bool(converged),
        iterations=int(res.nit),
        clamped=bool(clamped),
        n=int(f.n),
        looks=float(looks),
    )


def estimate_enl(values):
    """Moment estimator ``mean**2 / variance`` of the equivalent number of looks.

    Meant for a visually homogeneous region; texture inflates the variance
    and biases the estimate downward.
    """
    z = as_sample(values)
    if z.size < MIN_ENL_SAMPLE_SIZE:
        raise SampleTooSmallError(
            f"at least {MIN_ENL_SAMPLE_SIZE} observations are required, got {z.size}"
        )
    var = float(np.var(z, ddof=1))
    mean = float(np.mean(z))
    if not var > (1e-12 * mean) ** 2:
        raise DegenerateSampleError("sample variance is zero")
    return mean * mean / var
