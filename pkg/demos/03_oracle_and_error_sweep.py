"""
Checking the engine against a high-precision oracle
===================================================

The oracle evaluates the explicit alternating sum with exact integer weights
and 512-bit floating point.  A sweep compares every inside cell (or a
seeded sample of them) against the double-precision engine and reports the
worst absolute and relative errors per angle.
"""

from fractions import Fraction

from wignerd import HalfInt
from wignerd.harness import error_sweep, fit_quadratic, max_error_by_j
from wignerd.io import format_bigreal
from wignerd.oracle import PiMultiple, oracle_d_sum

# Exact angles and exact answers
j = HalfInt.of(100)
sixth = PiMultiple(Fraction(1, 6))
print("d_(100,-100)(pi/6) =", format_bigreal(oracle_d_sum(j, j, -j, sixth)))
print("d_(100,100)(pi/2)  =", format_bigreal(oracle_d_sum(j, j, j, PiMultiple(Fraction(1, 2)))))
print("2**-100            =", format_bigreal(2.0**-100))

# A small sweep: five spins on the default pi/36 .. pi/2 grid
spins = [HalfInt.of(x) for x in (10, 20, 30, 40, 50)]
records = error_sweep(spins, sample_budget=500)
for spin, err in max_error_by_j(records).items():
    print(f"j={str(spin):>3}  max |error| = {err:.2e}")

fit = fit_quadratic(records)
print(f"1e14 * max error ~ {fit.a:.2e} j^2 + {fit.b:.3f}")
