import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import expm_hermitian, spin_jy_dense, wigner_d_float
from wignerd import (
    HalfInt,
    ParityError,
    Region,
    SnapFailure,
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
from wignerd.oracle import oracle_d_sum, oracle_fourier_coefficients

H = HalfInt


def q(twice):
    return HalfInt(twice)


def projections(two_j):
    return [q(t) for t in range(-two_j, two_j + 1, 2)]


@st.composite
def spin_element(draw, max_two_j=40):
    two_j = draw(st.integers(0, max_two_j))
    im = draw(st.integers(0, two_j))
    in_ = draw(st.integers(0, two_j))
    return two_j, q(2 * im - two_j), q(2 * in_ - two_j)


# ---------------------------------------------------------------- eigenbasis


def test_eigenbasis_half_spin_magnitudes(basis_of):
    b = basis_of(1)
    assert np.allclose(np.abs(b.V), 1 / math.sqrt(2), atol=1e-15)


def test_eigenbasis_spin_one(basis_of):
    b = basis_of(2)
    assert b.mu == (q(-2), q(0), q(2))
    assert np.array_equal(b.mu_values, [-1.0, 0.0, 1.0])


@pytest.mark.parametrize("two_j", [0, 1, 2, 7, 30, 101])
def test_eigenbasis_orthonormal(basis_of, two_j):
    b = basis_of(two_j)
    assert np.abs(b.V.T @ b.V - np.eye(b.n)).max() <= 10 * b.n * np.finfo(float).eps


def test_eigenbasis_is_read_only(basis_of):
    b = basis_of(4)
    with pytest.raises(ValueError):
        b.V[0, 0] = 1.0


def test_eigenbasis_snap_failure_surfaces():
    with pytest.raises(SnapFailure):
        eigenbasis(H(20), snap_tol=0.0)


@pytest.mark.parametrize("bad", [-1, Fraction(1, 3), "abc", 1.25])
def test_eigenbasis_rejects_bad_spins(bad):
    with pytest.raises((ValueError, TypeError)):
        eigenbasis(bad)


# ------------------------------------------------------------ fourier slices


def test_fourier_slice_half_spin(basis_of):
    sl = fourier_slice(basis_of(1), q(1), q(1))
    assert sl.quarter_phase == 0
    assert np.allclose(sl.p, [0.5, 0.5], atol=1e-15)


@pytest.mark.parametrize("two_j", [1, 2, 3, 10, 40, 100])
def test_fourier_sum_rule(basis_of, two_j):
    b = basis_of(two_j)
    for m in projections(two_j):
        for n in projections(two_j):
            total = fourier_slice(b, m, n).p.sum()
            assert abs(total - (1.0 if m == n else 0.0)) <= 1e-13


@pytest.mark.parametrize("two_j", [1, 4, 9, 40])
def test_fourier_parity(basis_of, two_j):
    # reality of d and d(-theta) = d_{n,m}(theta) force t_{-mu} = (-1)**(n - m) t_mu
    b = basis_of(two_j)
    for m in projections(two_j):
        for n in projections(two_j):
            t = fourier_slice(b, m, n).coefficients()
            sign = -1.0 if ((n.twice - m.twice) // 2) % 2 else 1.0
            assert np.abs(t[::-1] - sign * t).max() <= 1e-13


@pytest.mark.parametrize("two_j", [2, 5, 12])
def test_fourier_index_symmetry(basis_of, two_j):
    # t_mu(n, m) = (-1)**(n - m) t_mu(m, n)
    b = basis_of(two_j)
    for m in projections(two_j):
        for n in projections(two_j):
            t_mn = fourier_slice(b, m, n).coefficients()
            t_nm = fourier_slice(b, n, m).coefficients()
            sign = -1 if ((n.twice - m.twice) // 2) % 2 else 1
            assert np.abs(t_nm - sign * t_mn).max() <= 1e-14


def test_fourier_slice_matches_exact_oracle_spin_one(basis_of):
    sl = fourier_slice(basis_of(2), q(2), q(-2))
    exact = [complex(c) for c in oracle_fourier_coefficients(H(2), q(2), q(-2))]
    assert np.abs(sl.coefficients() - np.array(exact)).max() <= 1e-13


def test_fourier_series_reconstructs_element(basis_of):
    b = basis_of(7)
    m, n, theta = q(3), q(-5), 0.731
    sl = fourier_slice(b, m, n)
    series = np.sum(sl.coefficients() * np.exp(-1j * b.mu_values * theta))
    assert abs(series.imag) <= 1e-14
    assert abs(series.real - d_element(b, m, n, theta)) <= 1e-14


# ------------------------------------------------------------------ elements


@pytest.mark.parametrize("two_j", [0, 1, 2, 5, 20])
def test_identity_at_zero(basis_of, two_j):
    b = basis_of(two_j)
    for m in projections(two_j):
        for n in projections(two_j):
            assert abs(d_element(b, m, n, 0.0) - (1.0 if m == n else 0.0)) <= 1e-13


@pytest.mark.parametrize("theta", [0.0, 0.3, 1.0, 2.5, -1.2, 7.0])
def test_half_spin_closed_form(basis_of, theta):
    b = basis_of(1)
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    assert abs(d_element(b, q(1), q(1), theta) - c) <= 1e-14
    assert abs(d_element(b, q(-1), q(-1), theta) - c) <= 1e-14
    assert abs(d_element(b, q(1), q(-1), theta) + s) <= 1e-14
    assert abs(d_element(b, q(-1), q(1), theta) - s) <= 1e-14


def test_legendre_value(basis_of):
    assert abs(d_element(basis_of(4), q(0), q(0), math.pi / 2) + 0.5) <= 1e-13


def test_spin_hundred_corner_underflows(basis_of):
    value = d_element(basis_of(200), q(200), q(-200), math.pi / 6)
    assert abs(value - 3.974e-118) <= 1e-13


@given(spin_element(max_two_j=16), st.floats(-7.0, 7.0))
@settings(max_examples=150, deadline=None)
def test_element_matches_float_sum(case, theta):
    two_j, m, n = case
    b = eigenbasis(q(two_j))
    assert abs(d_element(b, m, n, theta) - wigner_d_float(two_j, m.twice, n.twice, theta)) <= 1e-12


@pytest.mark.parametrize("two_j", [1, 2, 5, 8])
def test_element_matches_dense_exponential(basis_of, two_j):
    theta = 1.1
    U = expm_hermitian(spin_jy_dense(two_j), theta)
    table = d_matrix(basis_of(two_j), theta).values
    assert np.abs(table - U.real).max() <= 1e-13
    assert np.abs(U.imag).max() <= 1e-13


def test_element_rejects_bad_arguments(basis_of):
    b = basis_of(2)
    with pytest.raises(ParityError):
        d_element(b, q(1), q(0), 0.1)
    with pytest.raises(ValueError):
        d_element(b, q(4), q(0), 0.1)
    with pytest.raises(ValueError):
        d_element(b, q(0), q(0), float("nan"))
    with pytest.raises(ValueError):
        d_derivative(b, q(0), q(0), 0.1, -1)


# -------------------------------------------------------------------- tables


@pytest.mark.parametrize("two_j", [1, 6, 33])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_table_bit_identical_to_scalar(basis_of, two_j, k):
    b = basis_of(two_j)
    theta = 0.913
    table = d_derivative_matrix(b, theta, k)
    for m in projections(two_j):
        for n in projections(two_j):
            assert table.element(m, n) == d_derivative(b, m, n, theta, k)


def test_table_is_read_only(basis_of):
    t = d_matrix(basis_of(3), 0.2)
    with pytest.raises(ValueError):
        t.values[0, 0] = 0.0


@pytest.mark.parametrize("two_j", [1, 2, 11, 40, 100, 200])
def test_orthogonality(basis_of, two_j):
    b = basis_of(two_j)
    size = two_j + 1
    for theta in np.linspace(0, math.pi, 19):
        D = d_matrix(b, theta).values
        assert np.abs(D.T @ D - np.eye(size)).max() <= 1e-12 * size


@pytest.mark.parametrize("two_j", [1, 4, 13, 40])
def test_composition(basis_of, two_j):
    b = basis_of(two_j)
    size = two_j + 1
    for t1, t2 in [(0.3, 0.5), (1.2, -0.4), (2.0, 2.5)]:
        lhs = d_matrix(b, t1).values @ d_matrix(b, t2).values
        rhs = d_matrix(b, t1 + t2).values
        assert np.abs(lhs - rhs).max() <= 1e-12 * size


@pytest.mark.parametrize("two_j", [1, 2, 7, 10])
def test_periodicity(basis_of, two_j):
    b = basis_of(two_j)
    theta = 0.77
    D = d_matrix(b, theta).values
    assert np.abs(d_matrix(b, theta + 4 * math.pi).values - D).max() <= 1e-12
    sign = -1.0 if two_j % 2 else 1.0
    assert np.abs(d_matrix(b, theta + 2 * math.pi).values - sign * D).max() <= 1e-12


# --------------------------------------------------------------- derivatives


@pytest.mark.parametrize("theta", [0.2, 1.0, 2.9])
def test_half_spin_derivative(basis_of, theta):
    b = basis_of(1)
    assert abs(d_derivative(b, q(1), q(1), theta, 1) + math.sin(theta / 2) / 2) <= 1e-14
    assert abs(d_derivative_recurrence(b, q(1), q(1), theta) + math.sin(theta / 2) / 2) <= 1e-14


def test_order_zero_is_element_bitwise(basis_of):
    b = basis_of(9)
    for m in projections(9):
        assert d_derivative(b, m, q(3), 0.4, 0) == d_element(b, m, q(3), 0.4)


@given(spin_element(max_two_j=30), st.floats(0.05, 3.1))
@settings(max_examples=60, deadline=None)
def test_derivatives_match_finite_differences(case, theta):
    two_j, m, n = case
    b = eigenbasis(q(two_j))
    h = 1e-5
    for k in (1, 2):
        fd = (d_derivative(b, m, n, theta + h, k - 1) - d_derivative(b, m, n, theta - h, k - 1)) / (2 * h)
        assert abs(d_derivative(b, m, n, theta, k) - fd) <= 1e-8 * max(1.0, (two_j / 2) ** (k + 1))


@given(spin_element(max_two_j=100), st.floats(-6.3, 6.3))
@settings(max_examples=200, deadline=None)
def test_recurrence_agrees_with_fourier_derivative(case, theta):
    two_j, m, n = case
    b = eigenbasis(q(two_j))
    assert abs(d_derivative(b, m, n, theta, 1) - d_derivative_recurrence(b, m, n, theta)) <= 1e-12


def test_recurrence_top_column_uses_single_term(basis_of):
    # n = j: only the lowering neighbour contributes
    b = basis_of(6)
    j = q(6)
    theta = 0.6
    from wignerd import ladder_coefficient

    expected = 0.5 * ladder_coefficient(j, j) * d_element(b, q(2), q(4), theta)
    assert d_derivative_recurrence(b, q(2), j, theta) == expected


def _boundary_angles(j, m, n):
    """Angles in (0, pi) where m^2 + n^2 - 2mn cos = j(j+1) sin^2, by bisection."""
    jj = j * (j + 1)
    f = lambda t: m * m + n * n - 2 * m * n * math.cos(t) - jj * math.sin(t) ** 2  # noqa: E731
    grid = np.linspace(1e-6, math.pi - 1e-6, 4001)
    vals = [f(t) for t in grid]
    roots = []
    for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if fa * fb < 0:
            for _ in range(200):
                mid = 0.5 * (a + b)
                if f(mid) * fa > 0:
                    a, fa = mid, f(mid)
                else:
                    b = mid
            roots.append(0.5 * (a + b))
    return roots


@pytest.mark.parametrize("two_j", [20, 41, 80])
def test_boundary_is_where_radial_operator_vanishes(basis_of, two_j):
    # d'' + cot(theta) d' + [j(j+1) - (m^2 + n^2 - 2mn cos)/sin^2] d = 0; on the
    # boundary the bracket vanishes, so d'' + cot(theta) d' must as well.
    b = basis_of(two_j)
    j = two_j / 2
    rng = np.random.default_rng(two_j)
    checked = 0
    for _ in range(25):
        im, in_ = rng.integers(0, two_j + 1, size=2)
        m, n = q(2 * im - two_j), q(2 * in_ - two_j)
        for theta in _boundary_angles(j, float(m), float(n)):
            d1 = d_derivative(b, m, n, theta, 1)
            d2 = d_derivative(b, m, n, theta, 2)
            assert abs(d2 + d1 / math.tan(theta)) <= 1e-12 * j * j
            checked += 1
    assert checked > 10


@given(spin_element(max_two_j=40), st.floats(0.05, 3.09))
@settings(max_examples=100, deadline=None)
def test_second_order_differential_equation(case, theta):
    two_j, m, n = case
    b = eigenbasis(q(two_j))
    j, mf, nf = two_j / 2, float(m), float(n)
    d0, d1, d2 = (d_derivative(b, m, n, theta, k) for k in range(3))
    s = math.sin(theta)
    residual = d2 + d1 * math.cos(theta) / s + (j * (j + 1) - (mf * mf + nf * nf - 2 * mf * nf * math.cos(theta)) / s**2) * d0
    assert abs(residual) <= 1e-11 * max(1.0, j * j) / s**2


# ------------------------------------------------------------------ boundary


def test_boundary_center_inside():
    for two_j in (2, 3, 40):
        assert boundary_classify(q(two_j), q(two_j % 2), q(two_j % 2), math.pi / 4) is Region.INSIDE


def test_boundary_corner_outside():
    assert boundary_classify(H(200), q(200), q(-200), math.pi / 6) is Region.OUTSIDE


def test_boundary_circle_at_right_angle():
    j = H(80)
    for m in projections(80):
        for n in projections(80):
            inside = float(m) ** 2 + float(n) ** 2 <= 40 * 41
            assert (boundary_classify(j, m, n, math.pi / 2) is Region.INSIDE) == inside


def test_boundary_lhs_rhs_values():
    lhs, rhs = boundary_lhs_rhs(H(4), q(2), q(-4), math.pi / 3)
    assert lhs == pytest.approx(1 + 4 + 2)
    assert rhs == pytest.approx(6 * 0.75)


def test_boundary_identity_angle():
    for m in projections(6):
        for n in projections(6):
            assert (boundary_classify(H(6), m, n, 0.0) is Region.INSIDE) == (m == n)


def test_boundary_rejects_parity():
    with pytest.raises(ParityError):
        boundary_classify(H(4), q(1), q(0), 0.5)


# ---------------------------------------------------------------- symmetries


def test_symmetry_examples():
    img = symmetry_map(q(1), q(3), 0.4)
    assert (img.m, img.n, img.theta, img.sign) == (q(3), q(1), 0.4, -1)
    img = symmetry_map(q(4), q(2), math.pi - 0.3)
    assert (img.m, img.n) == (q(4), q(-2))
    assert img.theta == pytest.approx(0.3)
    img = symmetry_map(q(2), q(4), -0.5)
    assert (img.m, img.n, img.theta) == (q(4), q(2), 0.5)


@given(spin_element(max_two_j=30), st.floats(-20.0, 20.0))
@settings(max_examples=300, deadline=None)
def test_symmetry_map_consistent_with_engine(case, theta):
    two_j, m, n = case
    b = eigenbasis(q(two_j))
    img = symmetry_map(m, n, theta)
    assert 0 <= img.theta <= math.pi / 2 + 1e-15
    assert img.m.twice >= abs(img.n.twice)
    mapped = img.factor(q(two_j)) * d_element(b, img.m, img.n, img.theta)
    assert abs(d_element(b, m, n, theta) - mapped) <= 1e-12 * max(1.0, abs(theta))


def test_symmetry_rejects_mixed_parity():
    with pytest.raises(ValueError):
        symmetry_map(q(1), q(2), 0.1)


# ------------------------------------------------------------ oracle agreement


@pytest.mark.parametrize("two_j", [1, 2, 9, 40, 121, 200])
def test_engine_matches_oracle_sampled(basis_of, two_j):
    b = basis_of(two_j)
    rng = np.random.default_rng(1000 + two_j)
    for theta in (math.pi / 7, 1.3, 2.2):
        D = d_matrix(b, theta).values
        for _ in range(40):
            im, in_ = rng.integers(0, two_j + 1, size=2)
            exact = oracle_d_sum(q(two_j), q(2 * im - two_j), q(2 * in_ - two_j), theta)
            assert abs(D[im, in_] - float(exact)) <= 5e-14


# ------------------------------------------------------- central region decay


def _outside_max_by_margin(basis, theta, margins):
    j = basis.j
    D = np.abs(d_matrix(basis, theta).values)
    out = {}
    for im in range(j.twice + 1):
        for in_ in range(j.twice + 1):
            lhs, rhs = boundary_lhs_rhs(j, q(2 * im - j.twice), q(2 * in_ - j.twice), theta)
            for mg in margins:
                if lhs - rhs > mg:
                    out[mg] = max(out.get(mg, 0.0), D[im, in_])
    return out


@pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 4, math.pi / 2])
def test_elements_decay_outside_central_region(basis_of, theta):
    b = basis_of(80)
    D = np.abs(d_matrix(b, theta).values)
    from wignerd.harness import inside_mask

    mask = inside_mask(b.j, theta)
    assert D[~mask].max() < D[mask].max()
    margins = [0, 100, 200, 400, 800]
    by_margin = _outside_max_by_margin(b, theta, margins)
    values = [by_margin[mg] for mg in margins]
    assert all(x > y for x, y in zip(values, values[1:]))
    # half of j(j+1) past the curve the elements are four orders below O(1)
    assert by_margin[800] <= 1e-4


def test_elements_just_outside_are_not_negligible(basis_of):
    # the boundary is a turning curve, not a cliff: cells next to it still carry O(0.1) weight
    b = basis_of(80)
    by_margin = _outside_max_by_margin(b, math.pi / 6, [0])
    assert by_margin[0] > 1e-6
