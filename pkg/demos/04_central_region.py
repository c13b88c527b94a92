"""
The central region
==================

For a given angle the elements with m^2 + n^2 - 2mn cos(theta) above
j(j+1) sin^2(theta) are small, and they shrink quickly the farther the
cell lies past that curve.  Right at the curve they are not small yet.
"""

import math

import numpy as np

from wignerd import HalfInt, eigenbasis
from wignerd.harness import boundary_map

j = HalfInt.of(40)
basis = eigenbasis(j)

for theta in (math.pi / 6, math.pi / 4, math.pi / 2):
    rows = boundary_map(j, theta, basis)
    inside = [r["abs_d"] for r in rows if r["region"] == "inside"]
    print(f"theta = {theta:.4f}: {len(inside)} inside cells, max |d| inside {max(inside):.3f}")
    for margin in (0, 100, 200, 400, 800):
        far = [r["abs_d"] for r in rows if r["lhs"] - r["rhs"] > margin]
        print(f"   lhs - rhs > {margin:4d}: max |d| = {max(far):.1e}")

# A coarse picture at pi/2, where the boundary is the circle m^2 + n^2 = j(j+1)
rows = boundary_map(j, math.pi / 2, basis)
size = j.twice + 1
grid = np.array([r["abs_d"] for r in rows]).reshape(size, size)
chars = " .:-=+*#"
for i in range(0, size, 4):
    print("".join(chars[min(len(chars) - 1, int(v * 40))] for v in grid[i, ::2]))
