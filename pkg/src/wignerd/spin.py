"""Half-integer quantum numbers and the spin-j angular-momentum matrix.

Quantum numbers are stored doubled (``twice``) so that every piece of
j/m/n/mu bookkeeping is exact integer arithmetic.  Basis index ``i`` of a
(2j+1)-dimensional matrix corresponds to ``m = -j + i`` (ascending m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import ParityError


@dataclass(frozen=True, order=True)
class HalfInt:
    """An integer or half-integer, stored as twice its value."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, (int, np.integer)) or isinstance(self.twice, bool):
            raise TypeError(f"HalfInt.twice must be an int, got {self.twice!r}")
        object.__setattr__(self, "twice", int(self.twice))

    @classmethod
    def of(cls, value) -> "HalfInt":
        """Coerce ``value`` (HalfInt, int, Fraction, float or "p/q" string)."""
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return cls(2 * int(value))
        if isinstance(value, (float, np.floating)):
            doubled = 2.0 * float(value)
            if not doubled.is_integer():
                raise ParityError(f"{value!r} is not an integer or half-integer")
            return cls(int(doubled))
        if isinstance(value, Rational):
            doubled = Fraction(value) * 2
            if doubled.denominator != 1:
                raise ParityError(f"{value!r} is not an integer or half-integer")
            return cls(doubled.numerator)
        raise TypeError(f"cannot interpret {value!r} as a half-integer")

    def value(self) -> Fraction:
        return Fraction(self.twice, 2)

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __float__(self) -> float:
        return self.twice / 2

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


def check_spin(j) -> HalfInt:
    j = HalfInt.of(j)
    if j.twice < 0:
        raise ParityError(f"spin must be non-negative, got j={j}")
    return j


def check_projection(j: HalfInt, m) -> HalfInt:
    """Validate that ``m`` is one of -j, -j+1, ..., j."""
    m = HalfInt.of(m)
    if (j.twice - m.twice) % 2:
        raise ParityError(f"j={j} and m={m} differ by a half-integer")
    if abs(m.twice) > j.twice:
        raise ParityError(f"|m| > j for j={j}, m={m}")
    return m


def basis_index(j: HalfInt, m: HalfInt) -> int:
    """Row/column index of ``|j, m>`` in the ascending-m basis."""
    return (j.twice + m.twice) // 2


def ladder_coefficient(j, m) -> float:
    """X_m = sqrt((j + m)(j - m + 1)), defined for -j <= m <= j + 1."""
    j = check_spin(j)
    m = HalfInt.of(m)
    if (j.twice - m.twice) % 2:
        raise ParityError(f"j={j} and m={m} differ by a half-integer")
    # (2j + 2m)(2j - 2m + 2) is always divisible by 4 once parity matches
    prod = (j.twice + m.twice) * (j.twice - m.twice + 2)
    if prod < 0:
        raise ParityError(f"ladder coefficient undefined for j={j}, m={m}")
    return math.sqrt(prod // 4)


@dataclass(frozen=True)
class SymmetricTridiagonal:
    """Real symmetric tridiagonal matrix given by its two diagonals."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        diag = np.array(self.diag, dtype=float).reshape(-1)
        offdiag = np.array(self.offdiag, dtype=float).reshape(-1)
        if diag.size < 1:
            raise ValueError("matrix dimension must be at least 1")
        if offdiag.size != diag.size - 1:
            raise ValueError(
                f"offdiag has {offdiag.size} entries, expected {diag.size - 1}"
            )
        diag.setflags(write=False)
        offdiag.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def n(self) -> int:
        return self.diag.size

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Multiply by a vector (or by the columns of a matrix)."""
        x = np.asarray(x, dtype=float)
        y = self.diag.reshape((-1,) + (1,) * (x.ndim - 1)) * x
        if self.n > 1:
            e = self.offdiag.reshape((-1,) + (1,) * (x.ndim - 1))
            y[:-1] += e * x[1:]
            y[1:] += e * x[:-1]
        return y

    def norm_inf(self) -> float:
        a = np.abs(self.diag).copy()
        a[:-1] += np.abs(self.offdiag)
        a[1:] += np.abs(self.offdiag)
        return float(a.max())


def build_spin_tridiagonal(j) -> SymmetricTridiagonal:
    """The J_x matrix of spin j in the J_z eigenbasis.

    J_y of the same spin is ``D T D^dagger`` with ``D = diag((-i)**(j+m))``,
    so the two share eigenvalues and their eigenvectors differ only by
    those phases.  The real form is what gets diagonalized.
    """
    j = check_spin(j)
    n = j.twice + 1
    # offdiag[i] = X_{m+1} / 2 with m = -j + i
    off = [ladder_coefficient(j, HalfInt(-j.twice + 2 * i + 2)) / 2 for i in range(n - 1)]
    return SymmetricTridiagonal(np.zeros(n), np.array(off, dtype=float))
