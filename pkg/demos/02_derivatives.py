"""
Angle derivatives
=================

Derivatives of any order come from the same Fourier coefficients as the
elements themselves.  The first derivative can also be written through two
neighbouring elements, which gives an independent check.
"""

import numpy as np

from wignerd import HalfInt, d_derivative, d_derivative_matrix, d_derivative_recurrence, eigenbasis

j = HalfInt.of(20)
basis = eigenbasis(j)
m, n, theta = HalfInt.of(7), HalfInt.of(-3), 1.1

for k in range(4):
    print(f"d^{k} d_(7,-3)/dtheta^{k} = {d_derivative(basis, m, n, theta, k): .15e}")

# First derivative two ways
print("recurrence:", f"{d_derivative_recurrence(basis, m, n, theta): .15e}")

# A finite difference for good measure
h = 1e-6
fd = (d_derivative(basis, m, n, theta + h) - d_derivative(basis, m, n, theta - h)) / (2 * h)
print("central difference:", f"{fd: .15e}")

# Tables of derivatives: the largest entries grow like j**k
for k in range(4):
    table = d_derivative_matrix(basis, theta, k).values
    print(f"k={k}: max |entry| = {np.abs(table).max():8.2f}   j**k = {20.0**k:8.0f}")
