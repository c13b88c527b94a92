"""Error sweeps against the oracle, the quadratic error fit, boundary maps and
the Fisher information of a rotated spin coherent state."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .engine import (
    Region,
    SpinEigenbasis,
    boundary_lhs_rhs,
    d_derivative,
    d_derivative_matrix,
    d_element,
    eigenbasis,
)
from .oracle import DEFAULT_PRECISION, PiMultiple, WignerSumOracle
from .spin import HalfInt, check_spin

DEFAULT_BUDGET = 2000
REL_FLOOR = 1e-300
FISHER_CUTOFF = 1e-30


def default_theta_grid() -> list[PiMultiple]:
    """pi/36, 2pi/36, ..., pi/2 as exact multiples of pi."""
    return [PiMultiple(Fraction(k, 36)) for k in range(1, 19)]


@dataclass(frozen=True)
class ErrorRecord:
    j: HalfInt
    theta: float
    max_abs_error: float
    argmax_abs: tuple
    max_rel_error_inside: float
    argmax_rel: tuple
    samples: int
    order: int = 0
    theta_index: int = 0

    def as_row(self) -> dict:
        return {
            "two_j": self.j.twice,
            "order": self.order,
            "theta_index": self.theta_index,
            "theta": self.theta,
            "max_abs_error": self.max_abs_error,
            "two_m_abs": self.argmax_abs[0].twice,
            "two_n_abs": self.argmax_abs[1].twice,
            "max_rel_error_inside": self.max_rel_error_inside,
            "two_m_rel": self.argmax_rel[0].twice,
            "two_n_rel": self.argmax_rel[1].twice,
            "samples": self.samples,
        }


def inside_mask(j, theta: float) -> np.ndarray:
    """Boolean (2j+1)x(2j+1) mask of the central region, indexed [i_m, i_n]."""
    j = check_spin(j)
    q = (np.arange(j.twice + 1) * 2 - j.twice) / 2
    m, n = np.meshgrid(q, q, indexing="ij")
    jf = float(j)
    lhs = m * m + n * n - 2.0 * m * n * math.cos(theta)
    rhs = jf * (jf + 1.0) * math.sin(theta) ** 2
    slack = 16 * np.finfo(float).eps * (m * m + n * n + jf * (jf + 1.0))
    return lhs <= rhs + slack


def sample_cells(j, theta: float, budget: int, theta_index: int, seed: int = 0) -> list[tuple[int, int]]:
    """Index pairs (i_m, i_n) inside the central region to compare against the oracle.

    All inside cells when they fit in ``budget``; otherwise every inside
    diagonal cell m = n (where the largest errors sit) plus a seeded random
    draw of the remaining inside cells.
    """
    j = check_spin(j)
    mask = inside_mask(j, theta)
    cells = np.argwhere(mask)
    if len(cells) <= budget:
        return [tuple(map(int, c)) for c in cells]
    diag = cells[cells[:, 0] == cells[:, 1]]
    off = cells[cells[:, 0] != cells[:, 1]]
    rng = np.random.default_rng([seed, j.twice, theta_index])
    take = max(0, budget - len(diag))
    picked = off[np.sort(rng.choice(len(off), size=min(take, len(off)), replace=False))]
    chosen = np.concatenate([diag, picked]) if len(picked) else diag
    chosen = chosen[np.lexsort((chosen[:, 1], chosen[:, 0]))]
    return [tuple(map(int, c)) for c in chosen]


def _sweep(j_list, theta_grid, order, sample_budget, precision_bits, seed, bases=None):
    bases = {} if bases is None else bases
    records = []
    grid = default_theta_grid() if theta_grid is None else list(theta_grid)
    for j in j_list:
        j = check_spin(j)
        basis = bases.get(j)
        if basis is None:
            basis = bases[j] = eigenbasis(j)
        for t_index, angle in enumerate(grid, start=1):
            if not isinstance(angle, PiMultiple):
                angle = float(angle)
            theta = float(angle)
            table = d_derivative_matrix(basis, theta, order).values
            oracle = WignerSumOracle(j, angle, precision_bits, max_order=order)
            cells = sample_cells(j, theta, sample_budget, t_index, seed)
            max_abs, arg_abs = 0.0, (0, 0)
            max_rel, arg_rel = 0.0, None
            for im, in_ in cells:
                m = HalfInt(2 * im - j.twice)
                n = HalfInt(2 * in_ - j.twice)
                exact = oracle.derivative(m, n, order)
                diff = abs(table[im, in_] - exact)
                err = float(diff)
                if err > max_abs:
                    max_abs, arg_abs = err, (im, in_)
                if abs(exact) > REL_FLOOR:
                    rel = float(diff / abs(exact))
                    if rel > max_rel or arg_rel is None:
                        max_rel, arg_rel = rel, (im, in_)
            if arg_rel is None:
                arg_rel = arg_abs
            to_q = lambda c: (HalfInt(2 * c[0] - j.twice), HalfInt(2 * c[1] - j.twice))  # noqa: E731
            records.append(
                ErrorRecord(j, theta, max_abs, to_q(arg_abs), max_rel, to_q(arg_rel),
                            len(cells), order, t_index)
            )
    return records


def error_sweep(j_list: Iterable, theta_grid: Sequence[float] | None = None,
                sample_budget: int = DEFAULT_BUDGET, precision_bits: int = DEFAULT_PRECISION,
                seed: int = 0, bases: dict | None = None) -> list[ErrorRecord]:
    """Per-(j, theta) maximum absolute and relative errors of the engine.

    Grid points may be floats or exact :class:`PiMultiple` angles.  For an
    exact angle the engine sees its nearest double while the oracle works
    with the exact value, so elements that vanish identically (for example
    the odd-(j - m) Legendre zeros at pi/2) come out as exact zeros and are
    left out of the relative error.  ``bases`` may carry precomputed
    eigenbases keyed by spin; missing ones are added to it.
    """
    return _sweep(j_list, theta_grid, 0, sample_budget, precision_bits, seed, bases)


def derivative_error_sweep(j_list: Iterable, theta_grid: Sequence[float] | None = None, k: int = 1,
                           sample_budget: int = DEFAULT_BUDGET,
                           precision_bits: int = DEFAULT_PRECISION, seed: int = 0,
                           bases: dict | None = None) -> list[ErrorRecord]:
    """Like :func:`error_sweep` for the k-th theta-derivative (k = 1 or 2)."""
    if k not in (1, 2):
        raise ValueError(f"derivative sweeps support k = 1 or 2, got {k!r}")
    return _sweep(j_list, theta_grid, k, sample_budget, precision_bits, seed, bases)


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    rms_residual: float
    j: tuple = ()
    scaled_max_error: tuple = ()


def max_error_by_j(records: Iterable[ErrorRecord]) -> dict:
    out: dict = {}
    for rec in records:
        out[rec.j] = max(out.get(rec.j, 0.0), rec.max_abs_error)
    return dict(sorted(out.items()))


def fit_quadratic(records: Iterable[ErrorRecord]) -> FitResult:
    """Least-squares fit of 1e14 * max|error| per spin to a*j**2 + b."""
    per_j = max_error_by_j(records)
    if len(per_j) < 5:
        raise ValueError(f"fit needs at least 5 distinct spins, got {len(per_j)}")
    js = np.array([float(j) for j in per_j])
    y = 1e14 * np.array(list(per_j.values()))
    A = np.column_stack([js**2, np.ones_like(js)])
    (a, b), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ np.array([a, b])
    rms = float(np.sqrt(np.mean(resid**2)))
    return FitResult(float(a), float(b), rms, tuple(per_j), tuple(float(v) for v in y))


def fisher_information(basis: SpinEigenbasis, theta: float) -> float:
    """Fisher information of J_z counts on exp(-i theta J_y)|j, -j>.

    Outcome m has probability P_m = d^j_{m,-j}(theta)**2.  Outcomes with
    P_m below 1e-30 are dropped.
    """
    theta = float(theta)
    if not math.isfinite(theta):
        raise ValueError("theta must be finite")
    if abs(math.remainder(theta, math.pi)) < 1e-12:
        raise ValueError("Fisher information is singular at multiples of pi")
    j = basis.j
    low = -j
    total = 0.0
    for i in range(j.twice + 1):
        m = HalfInt(2 * i - j.twice)
        d = d_element(basis, m, low, theta)
        prob = d * d
        if prob < FISHER_CUTOFF:
            continue
        dprob = 2.0 * d * d_derivative(basis, m, low, theta, 1)
        total += dprob * dprob / prob
    return total


def outcome_probabilities(basis: SpinEigenbasis, theta: float) -> np.ndarray:
    j = basis.j
    return np.array([d_element(basis, HalfInt(2 * i - j.twice), -j, theta) ** 2
                     for i in range(j.twice + 1)])


def boundary_map(j, theta: float, basis: SpinEigenbasis | None = None) -> list[dict]:
    """Per-cell region label and |d| for a central-region map, in row-major (m, n) order."""
    j = check_spin(j)
    theta = float(theta)
    if basis is None:
        basis = eigenbasis(j)
    table = d_derivative_matrix(basis, theta, 0).values
    mask = inside_mask(j, theta)
    rows = []
    for im in range(j.twice + 1):
        for in_ in range(j.twice + 1):
            m = HalfInt(2 * im - j.twice)
            n = HalfInt(2 * in_ - j.twice)
            lhs, rhs = boundary_lhs_rhs(j, m, n, theta)
            rows.append({
                "two_m": m.twice,
                "two_n": n.twice,
                "region": (Region.INSIDE if mask[im, in_] else Region.OUTSIDE).value,
                "lhs": lhs,
                "rhs": rhs,
                "abs_d": abs(float(table[im, in_])),
            })
    return rows
