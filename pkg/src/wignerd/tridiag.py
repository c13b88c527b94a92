"""Eigendecomposition of real symmetric tridiagonal matrices.

Implicit QL with Wilkinson shifts; the plane rotations are accumulated into
the eigenvector matrix, so the cost is O(n^2) for the eigenvalues and O(n^3)
including vectors.  Only numpy array arithmetic is used.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, SnapFailure
from .spin import HalfInt, SymmetricTridiagonal, check_spin

MAX_ITERATIONS = 50
EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray  # ascending
    vectors: np.ndarray  # column k belongs to values[k]

    @property
    def n(self) -> int:
        return self.values.size


def eigh_tridiagonal(T: SymmetricTridiagonal, max_iterations: int = MAX_ITERATIONS) -> EigenDecomposition:
    """All eigenvalues and unit eigenvectors of ``T``.

    The result is deterministic: eigenvalues ascending, and each eigenvector
    is signed so that its largest-magnitude entry (lowest index on ties) is
    positive.

    Raises
    ------
    ConvergenceError
        If some eigenvalue needs more than ``max_iterations`` QL steps.
    """
    n = T.n
    d = [float(x) for x in T.diag]
    e = [float(x) for x in T.offdiag] + [0.0]
    if not all(math.isfinite(x) for x in d + e):
        raise ValueError("matrix entries must be finite")
    # power-of-two scaling to O(1) is exact and keeps rotations out of the subnormal range
    anorm = max(abs(x) for x in d + e)
    shift = math.frexp(anorm)[1] if anorm > 0 else 0
    d = [math.ldexp(x, -shift) for x in d]
    e = [math.ldexp(x, -shift) for x in e]
    # negligible against the whole matrix: deflate even inside a block of tiny entries
    floor = EPS * EPS * max(abs(x) for x in d + e)
    # zt[i] holds column i of the eigenvector matrix (contiguous for the rotations)
    zt = np.eye(n)

    for l in range(n):
        it = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= EPS * dd or abs(e[m]) <= floor:
                    break
                m += 1
            if m == l:
                break
            if it == max_iterations:
                raise ConvergenceError(l, it)
            it += 1

            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                zi = zt[i]
                zi1 = zt[i + 1]
                tmp = zi1 * c
                tmp += s * zi
                zi *= c
                zi -= s * zi1
                zt[i + 1] = tmp
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0

    values = np.array([math.ldexp(x, shift) for x in d])
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = np.ascontiguousarray(zt[order].T)
    _fix_signs(vectors)
    return EigenDecomposition(values, vectors)


def _fix_signs(vectors: np.ndarray) -> None:
    # argmax returns the lowest index among ties
    lead = np.argmax(np.abs(vectors), axis=0)
    signs = np.where(vectors[lead, np.arange(vectors.shape[1])] < 0, -1.0, 1.0)
    vectors *= signs


def default_snap_tol(j) -> float:
    return 1e-8 * max(1.0, float(check_spin(j)))


def snap_eigenvalues(values, j, snap_tol: float | None = None) -> list[HalfInt]:
    """Replace computed eigenvalues by the exact spin grid -j, ..., j.

    Raises ``SnapFailure`` for the first eigenvalue farther than ``snap_tol``
    from its grid point, which means the eigensolver misbehaved.
    """
    j = check_spin(j)
    values = np.asarray(values, dtype=float)
    if values.size != j.twice + 1:
        raise ValueError(f"expected {j.twice + 1} eigenvalues for j={j}, got {values.size}")
    if snap_tol is None:
        snap_tol = default_snap_tol(j)
    grid = [HalfInt(-j.twice + 2 * k) for k in range(j.twice + 1)]
    for k, (v, mu) in enumerate(zip(values, grid)):
        dev = abs(float(v) - float(mu))
        if not dev <= snap_tol:
            raise SnapFailure(k, float(v), dev)
    return grid
