"""
Phase estimation with a rotated coherent state
==============================================

Rotating |j, -j> by theta about y and counting J_z outcomes gives a binomial
distribution.  Its Fisher information is 2j at every angle, which makes a
good end-to-end test of the first derivatives.
"""

import math

from wignerd import HalfInt, eigenbasis
from wignerd.harness import fisher_information, outcome_probabilities

for x in ("1/2", "5", "20", "100"):
    j = HalfInt.of(x)
    basis = eigenbasis(j)
    values = [fisher_information(basis, t) for t in (math.pi / 6, math.pi / 4, math.pi / 2)]
    print(f"j={x:>4}: F = " + ", ".join(f"{v:.12f}" for v in values) + f"   (2j = {2 * float(j):g})")

basis = eigenbasis(HalfInt.of(5))
P = outcome_probabilities(basis, 1.0)
print("probabilities at theta=1:", " ".join(f"{p:.4f}" for p in P), " sum", P.sum())
