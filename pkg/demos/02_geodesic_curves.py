"""
Geodesic distance curves
========================

How far apart two laws are on the Fisher-metric manifold, when they differ
only in texture or only in scale.
"""

import numpy as np

from gi0geo import gd_same_scale, gd_same_texture

# Distance from the texture -8 to a grid of textures, for several looks.
grid = np.array([-14, -11, -8, -5, -3, -2])
print("alpha2 " + " ".join(f"L={L:<5d}" for L in (1, 2, 3, 8)))
for a2 in grid:
    row = [gd_same_scale(-8, float(a2), L).value for L in (1, 2, 3, 8)]
    print(f"{a2:6.1f} " + " ".join(f"{v:7.4f}" for v in row))

# More looks separate the same pair of textures further.
# With one look the distance is |log(alpha2 / alpha1)|, a straight line in log(-alpha2).

# Differences in scale alone, at texture -2.
for g2 in (1, 2.5, 5, 10, 20):
    print(f"gamma 5 -> {g2:5.1f}: GD {gd_same_texture(5, g2, -2, 1).value:.4f}")
