"""
The G0_I intensity law
======================

Density, moments and sampling for speckled intensity data, and what the
texture parameter does to a sample.
"""

import numpy as np

from gi0geo import ModelParams, fit_ml, moment, pdf, sample, texture_class

# Three textures at unit mean: the scale is chosen so that E[Z] = 1.
for alpha in (-1.5, -4.0, -10.0):
    p = ModelParams(alpha, gamma=-alpha - 1, looks=1)
    z = sample(p, 100_000, seed=0)
    print(f"alpha={alpha:6.1f} ({texture_class(alpha)}): mean {z.mean():.3f} "
          f"(exact {moment(p, 1):.3f}), 99.9% quantile {np.quantile(z, 0.999):8.2f}")

# Heavier texture means a heavier tail; the density at a fixed point shows it too.
p = ModelParams(-3, 2, 2)
print("\npdf of (-3, 2, 2) at z=1:", pdf(p, 1.0))

# Maximum likelihood recovers the parameters from a sample.
z = sample(ModelParams(-4, 1, 2), 10_000, seed=1)
fit = fit_ml(z, looks=2)
print(f"\nfit on 10^4 draws of (-4, 1, 2): alpha_hat={fit.alpha_hat:.3f} gamma_hat={fit.gamma_hat:.3f} "
      f"converged={fit.converged}")
