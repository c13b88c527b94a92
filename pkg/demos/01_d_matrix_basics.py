"""
A first look at the Wigner d-matrix
===================================

The d-matrix of spin j is the rotation exp(-i theta J_y) written in the J_z
basis.  We diagonalize the spin matrix once and then evaluate elements and
whole tables at any angle.
"""

import math

import numpy as np

from wignerd import HalfInt, d_element, d_matrix, eigenbasis

# Quantum numbers are HalfInt values; HalfInt(3) is 3/2, HalfInt.of("3/2") too.
j = HalfInt.of("3/2")
basis = eigenbasis(j)
print("spin", j, "eigenvalues", basis.mu_values)

# A single element and its closed form for comparison
theta = 0.7
value = d_element(basis, HalfInt.of("3/2"), HalfInt.of("1/2"), theta)
closed = -math.sqrt(3) * math.cos(theta / 2) ** 2 * math.sin(theta / 2)
print(f"d_(3/2,1/2)({theta}) = {value:.16f}   closed form {closed:.16f}")

# The whole table at one angle reuses the same eigenbasis
table = d_matrix(basis, theta).values
np.set_printoptions(precision=6, suppress=True)
print(table)

# Rotations are orthogonal and compose
print("orthogonality residual", np.abs(table.T @ table - np.eye(basis.n)).max())
both = d_matrix(basis, 0.3).values @ d_matrix(basis, 0.4).values
print("composition residual", np.abs(both - table).max())

# Half-integer spins change sign under a full turn
print("d(theta + 2 pi) = -d(theta):", np.allclose(d_matrix(basis, theta + 2 * math.pi).values, -table))
