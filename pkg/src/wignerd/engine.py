"""Wigner d-matrix by exact diagonalization of the spin matrix.

Write ``|j, mu>_y`` for the eigenvectors of J_y.  The d-matrix is the
Fourier series

    d^j_{m,n}(theta) = sum_mu exp(-i mu theta) t_mu,
    t_mu = <j,m|j,mu>_y <j,mu|j,n> = i**(n-m) * V[m,mu] * V[n,mu],

where V holds the (real, unit) eigenvectors of the J_x matrix.  Every
coefficient is a product of two numbers of magnitude at most one, so the
large alternating sums of the explicit formula never appear.  Derivatives
of any order just bring down powers of ``-i mu``.

All evaluation here goes through ``_weights`` and a sequential left-to-right
sum over mu, so scalar and whole-table evaluations agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .spin import (
    HalfInt,
    basis_index,
    build_spin_tridiagonal,
    check_projection,
    check_spin,
    ladder_coefficient,
)
from .tridiag import eigh_tridiagonal, snap_eigenvalues


@dataclass(frozen=True)
class SpinEigenbasis:
    """Eigenvalues and eigenvectors of the spin-j rotation generator.

    ``V[i, k]`` is the component of eigenvector ``k`` (eigenvalue
    ``mu[k] = -j + k``) on the basis state ``m = -j + i``.
    """

    j: HalfInt
    mu: tuple
    V: np.ndarray
    raw_eigenvalues: np.ndarray

    @property
    def n(self) -> int:
        return self.j.twice + 1

    @property
    def mu_values(self) -> np.ndarray:
        return np.array([x.twice for x in self.mu], dtype=float) / 2


def eigenbasis(j, snap_tol: float | None = None) -> SpinEigenbasis:
    """Diagonalize the spin-j matrix once; reuse the result for every m, n, theta."""
    j = check_spin(j)
    dec = eigh_tridiagonal(build_spin_tridiagonal(j))
    mu = snap_eigenvalues(dec.values, j, snap_tol)
    V = dec.vectors
    V.setflags(write=False)
    raw = dec.values
    raw.setflags(write=False)
    return SpinEigenbasis(j, tuple(mu), V, raw)


@dataclass(frozen=True)
class FourierSlice:
    """Fourier coefficients of one d-matrix element.

    The complex coefficient of ``exp(-i mu_k theta)`` is
    ``1j**quarter_phase * p[k]``.
    """

    j: HalfInt
    m: HalfInt
    n: HalfInt
    p: np.ndarray
    quarter_phase: int

    def coefficients(self) -> np.ndarray:
        return (1j ** self.quarter_phase) * self.p


def _indices(basis: SpinEigenbasis, m, n) -> tuple[HalfInt, HalfInt, int, int]:
    m = check_projection(basis.j, m)
    n = check_projection(basis.j, n)
    return m, n, basis_index(basis.j, m), basis_index(basis.j, n)


def _quarter(m: HalfInt, n: HalfInt) -> int:
    return ((n.twice - m.twice) // 2) % 4


def fourier_slice(basis: SpinEigenbasis, m, n) -> FourierSlice:
    m, n, im, in_ = _indices(basis, m, n)
    p = basis.V[im] * basis.V[in_]
    p.setflags(write=False)
    return FourierSlice(basis.j, m, n, p, _quarter(m, n))


def _check_theta(theta) -> float:
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return theta


def _weights(basis: SpinEigenbasis, theta: float, order: int) -> tuple[np.ndarray, np.ndarray]:
    """mu**order * cos(mu theta) and mu**order * sin(mu theta) over the spectrum."""
    mu = basis.mu_values
    arg = mu * theta
    cw = np.cos(arg)
    sw = np.sin(arg)
    if order:
        powk = mu**order
        cw *= powk
        sw *= powk
    return cw, sw


def _combine(cos_sum, sin_sum, r: int):
    # Re[i**r (C - iS)] for r = (n - m - order) mod 4
    if r == 0:
        return cos_sum
    if r == 1:
        return sin_sum
    if r == 2:
        return -cos_sum
    return -sin_sum


def _check_order(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise ValueError(f"derivative order must be a non-negative integer, got {k!r}")
    return int(k)


def d_derivative(basis: SpinEigenbasis, m, n, theta, k: int = 0) -> float:
    """k-th derivative of d^j_{m,n} with respect to theta (k=0 gives d itself)."""
    k = _check_order(k)
    theta = _check_theta(theta)
    m, n, im, in_ = _indices(basis, m, n)
    p = basis.V[im] * basis.V[in_]
    cw, sw = _weights(basis, theta, k)
    r = (_quarter(m, n) - k) % 4
    w = cw if r % 2 == 0 else sw
    # cumsum is a strict left-to-right sum, matching the table accumulation
    total = np.cumsum(p * w)[-1]
    return float(total if r < 2 else -total)


def d_element(basis: SpinEigenbasis, m, n, theta) -> float:
    """d^j_{m,n}(theta)."""
    return d_derivative(basis, m, n, theta, 0)


@dataclass(frozen=True)
class DMatrixTable:
    j: HalfInt
    theta: float
    values: np.ndarray  # values[i_m, i_n]
    order: int = 0

    def element(self, m, n) -> float:
        m = check_projection(self.j, m)
        n = check_projection(self.j, n)
        return float(self.values[basis_index(self.j, m), basis_index(self.j, n)])


def d_derivative_matrix(basis: SpinEigenbasis, theta, k: int = 0) -> DMatrixTable:
    """Whole table of k-th derivatives at one angle, no re-diagonalization."""
    k = _check_order(k)
    theta = _check_theta(theta)
    V = basis.V
    size = basis.n
    cw, sw = _weights(basis, theta, k)

    outer = np.multiply.outer(V[:, 0], V[:, 0])
    csum = outer * cw[0]
    ssum = outer * sw[0]
    buf = np.empty_like(outer)
    for q in range(1, size):
        np.multiply.outer(V[:, q], V[:, q], out=outer)
        np.multiply(outer, cw[q], out=buf)
        csum += buf
        np.multiply(outer, sw[q], out=buf)
        ssum += buf

    # (n - m) mod 4 with i_n - i_m = n - m
    idx = np.arange(size)
    r = (idx[None, :] - idx[:, None] - k) % 4
    values = np.where(r % 2 == 0, csum, ssum)
    values = np.where(r >= 2, -values, values)
    values.setflags(write=False)
    return DMatrixTable(basis.j, theta, values, k)


def d_matrix(basis: SpinEigenbasis, theta) -> DMatrixTable:
    return d_derivative_matrix(basis, theta, 0)


def d_derivative_recurrence(basis: SpinEigenbasis, m, n, theta) -> float:
    """First derivative from two neighbouring elements of the same row.

    Independent of the Fourier-derivative route; used as a cross-check.
    """
    j = basis.j
    m, n, _, _ = _indices(basis, m, n)
    total = 0.0
    if n.twice > -j.twice:
        total += ladder_coefficient(j, n) * d_element(basis, m, n - HalfInt(2), theta)
    if n.twice < j.twice:
        total -= ladder_coefficient(j, -n) * d_element(basis, m, n + HalfInt(2), theta)
    return 0.5 * total


class Region(Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


def boundary_lhs_rhs(j, m, n, theta) -> tuple[float, float]:
    """Both sides of the central-region boundary m^2 + n^2 - 2mn cos = j(j+1) sin^2."""
    j = check_spin(j)
    m = check_projection(j, m)
    n = check_projection(j, n)
    theta = _check_theta(theta)
    mf, nf, jf = float(m), float(n), float(j)
    lhs = mf * mf + nf * nf - 2.0 * mf * nf * math.cos(theta)
    rhs = jf * (jf + 1.0) * math.sin(theta) ** 2
    return lhs, rhs


def boundary_classify(j, m, n, theta) -> Region:
    """Inside iff m^2 + n^2 - 2mn cos(theta) <= j(j+1) sin^2(theta).

    Points on the boundary count as inside; a few ulps of slack keep lattice
    points that sit exactly on the curve (e.g. at theta = pi/2) from being
    misclassified by rounding in cos and sin.
    """
    lhs, rhs = boundary_lhs_rhs(j, m, n, theta)
    jf = float(HalfInt.of(j))
    m2n2 = float(HalfInt.of(m)) ** 2 + float(HalfInt.of(n)) ** 2
    slack = 16 * np.finfo(float).eps * (m2n2 + jf * (jf + 1.0))
    return Region.INSIDE if lhs <= rhs + slack else Region.OUTSIDE


class JParity(NamedTuple):
    """Exponent ``j_coeff * j + offset`` of a j-dependent factor (-1)**(...)."""

    j_coeff: int
    offset: HalfInt

    def resolve(self, j) -> int:
        j = HalfInt.of(j)
        e = HalfInt(self.j_coeff * j.twice + self.offset.twice)
        if not e.is_integer():
            raise ValueError(f"(-1)**({self.j_coeff}j + {self.offset}) is not real for j={j}")
        return -1 if (e.twice // 2) % 2 else 1


class SymmetryImage(NamedTuple):
    m: HalfInt
    n: HalfInt
    theta: float
    sign: int
    j_parity: JParity

    def factor(self, j) -> int:
        return self.sign * self.j_parity.resolve(j)


def symmetry_map(m, n, theta) -> SymmetryImage:
    """Map (m, n, theta) to a representative with 0 <= theta' <= pi/2, m' >= |n'|.

    ``d^j_{m,n}(theta) = factor(j) * d^j_{m',n'}(theta')`` for every j that
    admits (m, n).  Only the test-suite uses this; evaluation never reduces
    its arguments.
    """
    m = HalfInt.of(m)
    n = HalfInt.of(n)
    theta = _check_theta(theta)
    if (m.twice - n.twice) % 2:
        raise ValueError("m and n must both be integers or both half-integers")
    sign = 1
    j_coeff = 0
    offset = HalfInt(0)

    # d_{m,n}(-theta) = d_{n,m}(theta)
    if theta < 0:
        m, n, theta = n, m, -theta
    # d(theta + 2 pi) = (-1)**(2j) d(theta)
    turns = math.floor(theta / (2 * math.pi))
    if turns:
        theta -= turns * 2 * math.pi
        j_coeff += 2 * turns
        if theta >= 2 * math.pi:
            theta -= 2 * math.pi
            j_coeff += 2
    # d_{m,n}(pi + phi) = (-1)**(j - n) d_{m,-n}(phi)
    if theta >= math.pi:
        theta -= math.pi
        j_coeff += 1
        offset = offset - n
        n = -n
    # d_{m,n}(pi - phi) = (-1)**(j + m) d_{m,-n}(phi)
    if theta > math.pi / 2:
        theta = math.pi - theta
        j_coeff += 1
        offset = offset + m
        n = -n
    # index symmetries at fixed theta
    mn_sign = -1 if ((m.twice - n.twice) // 2) % 2 else 1
    if abs(m.twice) >= abs(n.twice):
        if m.twice < 0:
            m, n = -m, -n
            sign *= mn_sign
    elif n.twice >= 0:
        m, n = n, m
        sign *= mn_sign
    else:
        m, n = -n, -m

    j_coeff %= 4
    if j_coeff == 0 and offset.is_integer():
        if (offset.twice // 2) % 2:
            sign = -sign
        offset = HalfInt(0)
    else:
        offset = HalfInt(offset.twice % 4)
    return SymmetryImage(m, n, theta, sign, JParity(j_coeff, offset))
