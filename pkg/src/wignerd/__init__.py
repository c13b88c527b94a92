"""High-precision Wigner d-matrix and its derivatives by exact diagonalization."""

__version__ = "0.1.0"

from .engine import (
    DMatrixTable,
    FourierSlice,
    Region,
    SpinEigenbasis,
    boundary_classify,
    boundary_lhs_rhs,
    d_derivative,
    d_derivative_matrix,
    d_derivative_recurrence,
    d_element,
    d_matrix,
    eigenbasis,
    fourier_slice,
    symmetry_map,
)
from .errors import ConvergenceError, NumericalFailure, ParityError, PrecisionError, SnapFailure
from .spin import HalfInt, SymmetricTridiagonal, build_spin_tridiagonal, ladder_coefficient
from .tridiag import EigenDecomposition, eigh_tridiagonal, snap_eigenvalues

__all__ = [
    "ConvergenceError",
    "DMatrixTable",
    "EigenDecomposition",
    "FourierSlice",
    "HalfInt",
    "NumericalFailure",
    "ParityError",
    "PrecisionError",
    "Region",
    "SnapFailure",
    "SpinEigenbasis",
    "SymmetricTridiagonal",
    "boundary_classify",
    "boundary_lhs_rhs",
    "build_spin_tridiagonal",
    "d_derivative",
    "d_derivative_matrix",
    "d_derivative_recurrence",
    "d_element",
    "d_matrix",
    "eigenbasis",
    "eigh_tridiagonal",
    "fourier_slice",
    "ladder_coefficient",
    "snap_eigenvalues",
    "symmetry_map",
]
