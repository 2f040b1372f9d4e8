"""Digamma and trigamma functions for positive real arguments.

Both functions shift the argument upward with the recurrences

    psi(t) = psi(t + 1) - 1/t
    psi1(t) = psi1(t + 1) + 1/t**2

until it is at least ``_ASYMPTOTIC_FROM`` and then evaluate the asymptotic
(Stirling type) series with Bernoulli-number coefficients. With the switch
point at 10 and seven correction terms the truncation error is below 1e-17,
so the result is limited by rounding in the recurrence sum only.

Scalars and numpy arrays are accepted; scalars come back as Python floats.
"""

import math

import numpy as np

from .errors import DomainError

__all__ = ["digamma", "trigamma", "trigamma_difference"]

_ASYMPTOTIC_FROM = 10.0

# B_{2k} / (2k) for k = 1..7, used by digamma
_DIGAMMA_COEFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)

# B_{2k} for k = 1..7, used by trigamma
_TRIGAMMA_COEFS = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
)


def _positive_array(t, name):
    arr = np.asarray(t, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} requires t > 0")
    return arr


def _shift_count(arr):
    # number of unit steps needed to bring every entry above the switch point
    return np.maximum(np.ceil(_ASYMPTOTIC_FROM - arr), 0.0).astype(int)


def _digamma_scalar(x):
    acc = 0.0
    while x < _ASYMPTOTIC_FROM:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_DIGAMMA_COEFS):
        series = series * inv2 + c
    return math.log(x) - 0.5 / x - series * inv2 + acc


def _trigamma_scalar(x):
    acc = 0.0
    while x < _ASYMPTOTIC_FROM:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    for c in reversed(_TRIGAMMA_COEFS):
        series = series * inv2 + c
    return (inv + 0.5 * inv2 + series * inv2 * inv) + acc


def digamma(t):
    """Logarithmic derivative of the gamma function, ``d/dt ln Gamma(t)``.

    Raises :class:`DomainError` for ``t <= 0``.
    """
    if isinstance(t, (float, int)):
        if not t > 0:
            raise DomainError("digamma requires t > 0")
        return _digamma_scalar(float(t))
    arr = _positive_array(t, "digamma")
    shifts = _shift_count(arr)
    x = arr.copy()
    acc = np.zeros_like(arr)
    for step in range(int(shifts.max(initial=0))):
        active = shifts > step
        acc = np.where(active, acc - 1.0 / np.where(active, x, 1.0), acc)
        x = np.where(active, x + 1.0, x)

    inv2 = 1.0 / (x * x)
    series = np.zeros_like(x)
    for c in reversed(_DIGAMMA_COEFS):
        series = series * inv2 + c
    result = np.log(x) - 0.5 / x - series * inv2 + acc
    return float(result) if result.ndim == 0 else result


def trigamma(t):
    """Second derivative of ``ln Gamma(t)``.

    Raises :class:`DomainError` for ``t <= 0``.
    """
    if isinstance(t, (float, int)):
        if not t > 0:
            raise DomainError("trigamma requires t > 0")
        return _trigamma_scalar(float(t))
    arr = _positive_array(t, "trigamma")
    shifts = _shift_count(arr)
    x = arr.copy()
    acc = np.zeros_like(arr)
    for step in range(int(shifts.max(initial=0))):
        active = shifts > step
        xs = np.where(active, x, 1.0)
        acc = np.where(active, acc + 1.0 / (xs * xs), acc)
        x = np.where(active, x + 1.0, x)

    inv = 1.0 / x
    inv2 = inv * inv
    series = np.zeros_like(x)
    for c in reversed(_TRIGAMMA_COEFS):
        series = series * inv2 + c
    # psi1(x) ~ 1/x + 1/(2x^2) + sum_k B_2k / x^(2k+1)
    result = inv + 0.5 * inv2 + series * inv2 * inv
    # sum the small asymptotic part first, the large recurrence terms last
    result = result + acc
    return float(result) if result.ndim == 0 else result


def trigamma_difference(alpha, looks):
    """Finite-sum form of ``trigamma(-alpha) - trigamma(looks - alpha)``.

    Returns ``sum_{n=1..looks} (n - 1 - alpha)**-2``. This is the Fisher
    information for the texture parameter and is free of the cancellation
    that the subtraction suffers for large ``looks``.

    ``alpha`` may be an array; ``looks`` must be a positive integer.
    """
    a = np.asarray(alpha, dtype=float)
    if np.any(~(a < 0)):
        raise DomainError("trigamma_difference requires alpha < 0")
    L = _integer_looks(looks)
    if L is None or L < 1:
        raise DomainError(f"trigamma_difference requires an integer looks >= 1, got {looks!r}")
    # largest terms (n = 1) added last
    total = np.zeros_like(a)
    for n in range(L, 0, -1):
        d = n - 1.0 - a
        total = total + 1.0 / (d * d)
    return float(total) if total.ndim == 0 else total


def _integer_looks(looks, tol=1e-9):
    """Nearest integer to ``looks`` when within ``tol``, else ``None``."""
    r = round(float(looks))
    if math.isfinite(looks) and abs(float(looks) - r) <= tol:
        return int(r)
    return None
