"""Slow arbitrary-precision reference values for the d-matrix.

Everything here is independent of the eigen-decomposition route: the
explicit alternating sum, its Fourier-coefficient integral, the closed-form
edge row and the Legendre column.  Integers (factorials, binomials) are
exact; the only roundings are in the trigonometric values, the square roots
and the final products, all carried out with ``gmpy2.mpfr`` at the requested
precision.

Angles are radians (float, int or mpfr) or a :class:`PiMultiple`, which is
an exact rational multiple of pi.  For multiples of pi/2 the half-angle
squares cos^2 and sin^2 are then exact, so e.g. the corner value at
theta = pi/2 comes out as an exact power of two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq, mpz

from .errors import ParityError, PrecisionError
from .spin import HalfInt, check_projection, check_spin

DEFAULT_PRECISION = 512


def precision_floor(j) -> int:
    """Minimum mantissa width (bits) for the explicit sum at spin j: 4j + 64."""
    return 2 * check_spin(j).twice + 64


def _context(precision_bits: int):
    return gmpy2.context(gmpy2.get_context(), precision=int(precision_bits))


@dataclass(frozen=True)
class PiMultiple:
    """The angle ``ratio * pi``, kept exact."""

    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", Fraction(self.ratio))

    @classmethod
    def parse(cls, text: str) -> "PiMultiple":
        return cls(Fraction(text.strip()))

    def radians(self) -> float:
        return self.ratio.numerator * math.pi / self.ratio.denominator

    def __float__(self) -> float:
        return self.radians()

    def __str__(self) -> str:
        return f"{self.ratio}*pi"


def _trig_pi(ratio: Fraction):
    """cos and sin of ratio*pi; exact when ratio is a multiple of 1/2.

    For multiples of 1/6 the values +-1/2 are exact as well and sqrt(3)/2 is
    correctly rounded, so polynomials in cos(pi/3) vanish exactly where they should.
    """
    if (2 * ratio).denominator == 1:
        quarter = int(2 * ratio) % 4
        cos_val, sin_val = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter]
        return mpfr(cos_val), mpfr(sin_val)
    if (6 * ratio).denominator == 1:
        half, root = mpfr(1) / 2, gmpy2.sqrt(mpfr(3)) / 2
        k = int(6 * ratio) % 12
        table = {1: (root, half), 2: (half, root), 4: (-half, root), 5: (-root, half)}
        cos_val, sin_val = table[k % 6] if k < 6 else table[k - 6]
        return (cos_val, sin_val) if k < 6 else (-cos_val, -sin_val)
    angle = gmpy2.const_pi() * mpfr(mpq(ratio.numerator, ratio.denominator))
    return gmpy2.cos(angle), gmpy2.sin(angle)


def _angle(theta):
    if isinstance(theta, PiMultiple):
        return theta
    if isinstance(theta, Fraction):
        raise TypeError("pass rational multiples of pi as PiMultiple, radians as float")
    value = float(theta) if not isinstance(theta, type(mpfr(0))) else theta
    if not gmpy2.is_finite(mpfr(value)):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return value


def _full_angle(theta):
    """cos and sin of theta at the current precision."""
    theta = _angle(theta)
    if isinstance(theta, PiMultiple):
        return _trig_pi(theta.ratio)
    x = mpfr(theta)
    return gmpy2.cos(x), gmpy2.sin(x)


def _half_angle(theta):
    """(cos(theta/2), sin(theta/2), cos^2(theta/2), sin^2(theta/2))."""
    theta = _angle(theta)
    if isinstance(theta, PiMultiple):
        c, s = _trig_pi(theta.ratio / 2)
        if (2 * theta.ratio).denominator == 1:
            cos_full, _ = _trig_pi(theta.ratio)
            return c, s, (1 + cos_full) / 2, (1 - cos_full) / 2
        return c, s, c * c, s * s
    half = mpfr(theta) / 2
    c, s = gmpy2.cos(half), gmpy2.sin(half)
    return c, s, c * c, s * s


def _powers(x, x2, top: int) -> list:
    """x**0 .. x**top, even powers built from x2 only."""
    out = [mpfr(1), x]
    for a in range(2, top + 1):
        out.append(out[a - 2] * x2)
    return out[: top + 1]


def _rational_powers(x, count: int) -> list:
    out = [mpq(1)]
    for _ in range(1, count):
        out.append(out[-1] * x)
    return out


@lru_cache(maxsize=4096)
def _derivative_monomials(a: int, b: int, order: int) -> tuple:
    """Expand d^order/dtheta^order of cos^a(theta/2) sin^b(theta/2).

    Returns ((a', b', integer coefficient), ...); the expansion carries an
    overall factor 2**-order.
    """
    terms = {(a, b): 1}
    for _ in range(order):
        nxt: dict = {}
        for (p, q), coef in terms.items():
            # d/dtheta c^p s^q = (q c^(p+1) s^(q-1) - p c^(p-1) s^(q+1)) / 2
            if q:
                nxt[(p + 1, q - 1)] = nxt.get((p + 1, q - 1), 0) + coef * q
            if p:
                nxt[(p - 1, q + 1)] = nxt.get((p - 1, q + 1), 0) - coef * p
        terms = {key: c for key, c in nxt.items() if c}
    return tuple((p, q, c) for (p, q), c in sorted(terms.items()))


class WignerSumOracle:
    """Explicit-sum evaluator for one spin and one angle.

    Factorials and the half-angle power tables are shared by every (m, n)
    evaluated through the same instance, which is what makes full-table
    error sweeps affordable.
    """

    def __init__(self, j, theta, precision_bits: int = DEFAULT_PRECISION, max_order: int = 0):
        self.j = check_spin(j)
        floor = precision_floor(self.j)
        if precision_bits < floor:
            raise PrecisionError(
                f"precision_bits={precision_bits} is below the floor {floor} for j={self.j}"
            )
        self.precision_bits = int(precision_bits)
        self.theta = _angle(theta)
        self.max_order = int(max_order)
        top = self.j.twice + self.max_order
        self._fact = [mpz(math.factorial(i)) for i in range(self.j.twice + 1)]
        with _context(self.precision_bits):
            c, s, c2, s2 = _half_angle(self.theta)
            self._cpow = _powers(c, c2, top)
            self._spow = _powers(s, s2, top)
            self._c, self._s = c, s
        # at multiples of pi/3, cos^2 and sin^2 of the half angle are rational:
        # the sum then splits into an exact rational times c**(a%2) * s**(b%2),
        # and elements that vanish identically come out as exact zeros
        self._exact = None
        if isinstance(self.theta, PiMultiple) and (3 * self.theta.ratio).denominator == 1:
            k = int(3 * self.theta.ratio) % 6
            cos_full = [mpq(1), mpq(1, 2), mpq(-1, 2), mpq(-1), mpq(-1, 2), mpq(1, 2)][k]
            c2q, s2q = (1 + cos_full) / 2, (1 - cos_full) / 2
            half = top // 2 + 1
            self._exact = (_rational_powers(c2q, half), _rational_powers(s2q, half))

    def _terms(self, m: HalfInt, n: HalfInt):
        """Yield (sign * integer weight, a, b) of the explicit sum, plus the radicand."""
        tj = self.j.twice
        jpm, jmm = (tj + m.twice) // 2, (tj - m.twice) // 2
        jpn, jmn = (tj + n.twice) // 2, (tj - n.twice) // 2
        mn = (m.twice - n.twice) // 2
        f = self._fact
        common = f[jpn] * f[jmn]
        out = []
        for k in range(max(0, -mn), min(jmm, jpn) + 1):
            den = f[jmm - k] * f[jpn - k] * f[k + mn] * f[k]
            weight, rem = divmod(common, den)
            assert rem == 0
            if (k + mn) % 2:
                weight = -weight
            out.append((weight, tj - 2 * k - mn, 2 * k + mn))
        radicand = mpq(f[jpm] * f[jmm], common)
        return out, radicand

    def derivative(self, m, n, order: int = 0):
        """order-th theta-derivative of d^j_{m,n} (order 0 is d itself), as mpfr."""
        m = check_projection(self.j, m)
        n = check_projection(self.j, n)
        if order < 0 or order > self.max_order:
            raise ValueError(f"order {order} outside 0..{self.max_order} for this oracle")
        terms, radicand = self._terms(m, n)
        if self._exact is not None:
            return self._derivative_exact(terms, radicand, order)
        cp, sp = self._cpow, self._spow
        with _context(self.precision_bits):
            parts = []
            for weight, a, b in terms:
                if order == 0:
                    parts.append(weight * (cp[a] * sp[b]))
                    continue
                for p, q, coef in _derivative_monomials(a, b, order):
                    parts.append((weight * coef) * (cp[p] * sp[q]))
            total = gmpy2.fsum(parts) if parts else mpfr(0)
            if order:
                total = total / mpz(2) ** order
            return gmpy2.sqrt(mpfr(radicand)) * total

    def _derivative_exact(self, terms, radicand, order):
        cq, sq = self._exact
        total = mpq(0)
        parity = None
        for weight, a, b in terms:
            monomials = ((a, b, 1),) if order == 0 else _derivative_monomials(a, b, order)
            for p, q, coef in monomials:
                parity = (p % 2, q % 2)
                total += (weight * coef) * cq[p // 2] * sq[q // 2]
        if total == 0:
            return mpfr(0)
        with _context(self.precision_bits):
            value = gmpy2.sqrt(mpfr(radicand)) * mpfr(total / mpz(2) ** order)
            if parity[0]:
                value *= self._c
            if parity[1]:
                value *= self._s
            return value

    def d(self, m, n):
        return self.derivative(m, n, 0)


def oracle_d_sum(j, m, n, theta, precision_bits: int = DEFAULT_PRECISION):
    """d^j_{m,n}(theta) from the explicit alternating sum, as mpfr."""
    return WignerSumOracle(j, theta, precision_bits).d(m, n)


def oracle_d_derivative(j, m, n, theta, order: int, precision_bits: int = DEFAULT_PRECISION):
    """Termwise-differentiated explicit sum."""
    return WignerSumOracle(j, theta, precision_bits, max_order=order).derivative(m, n, order)


def oracle_edge_row(j, m, theta, precision_bits: int = DEFAULT_PRECISION):
    """Closed form of the top row, d^j_{j,m}(theta)."""
    j = check_spin(j)
    m = check_projection(j, m)
    up, down = (j.twice + m.twice) // 2, (j.twice - m.twice) // 2
    with _context(precision_bits):
        c, s, c2, s2 = _half_angle(theta)
        value = _powers(c, c2, up)[up] * _powers(s, s2, down)[down]
        value = gmpy2.sqrt(mpfr(mpz(math.comb(j.twice, up)))) * value
        return -value if down % 2 else value


def oracle_legendre(j, m, theta, precision_bits: int = DEFAULT_PRECISION):
    """d^j_{m,0}(theta) through the associated Legendre function P_j^m(cos theta).

    P_j^m here carries no Condon-Shortley phase; negative orders use
    P_j^{-m} = (-1)^m (j-m)!/(j+m)! P_j^m.  The recurrence is the usual
    upward one in the degree, started from P_m^m = (2m-1)!! sin^m(theta).
    """
    j = check_spin(j)
    if not j.is_integer():
        raise ParityError(f"Legendre connection needs integer j, got j={j}")
    m = check_projection(j, m)
    L, M = j.twice // 2, m.twice // 2
    am = abs(M)
    with _context(precision_bits):
        x, sin_t = _full_angle(theta)
        p_prev = mpfr(mpz(math.prod(range(1, 2 * am, 2)))) * sin_t**am
        if L == am:
            p = p_prev
        else:
            p_cur = x * (2 * am + 1) * p_prev
            for l in range(am + 2, L + 1):
                p_prev, p_cur = p_cur, (x * (2 * l - 1) * p_cur - (l + am - 1) * p_prev) / (l - am)
            p = p_cur
        if M < 0:
            ratio = mpq(math.factorial(L - am), math.factorial(L + am))
            p = mpfr(ratio) * p
            if am % 2:
                p = -p
        prefactor = gmpy2.sqrt(mpfr(mpq(math.factorial(L - M), math.factorial(L + M))))
        value = prefactor * p
        return -value if M % 2 else value


@dataclass(frozen=True)
class ExactCoefficient:
    """Exact Fourier coefficient ``i**quarter_phase * sqrt(radicand) * numerator / 2**denominator_pow2``.

    The square root collects the factorial ratio shared by every term of the
    sum, so the representation is exact for all (j, m, n, mu); when m = n the
    radicand is 1 and the value is a dyadic rational.
    """

    numerator: int
    denominator_pow2: int
    quarter_phase: int
    radicand: Fraction = Fraction(1)

    def __post_init__(self):
        num, den, q = int(self.numerator), int(self.denominator_pow2), int(self.quarter_phase) % 4
        if num == 0:
            num, den, q = 0, 0, 0
        else:
            if num < 0:
                num, q = -num, (q + 2) % 4
            while den > 0 and num % 2 == 0:
                num //= 2
                den -= 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator_pow2", den)
        object.__setattr__(self, "quarter_phase", q)
        object.__setattr__(self, "radicand", Fraction(self.radicand))

    def __eq__(self, other):
        if not isinstance(other, ExactCoefficient):
            return NotImplemented
        if self.numerator == 0 or other.numerator == 0:
            return self.numerator == other.numerator
        if self.quarter_phase != other.quarter_phase:
            return False
        lhs = Fraction(self.numerator**2, 4**self.denominator_pow2) * self.radicand
        rhs = Fraction(other.numerator**2, 4**other.denominator_pow2) * other.radicand
        return lhs == rhs

    def __hash__(self):
        if self.numerator == 0:
            return hash(0)
        sq = Fraction(self.numerator**2, 4**self.denominator_pow2) * self.radicand
        return hash((self.quarter_phase, sq))

    def magnitude(self, precision_bits: int = DEFAULT_PRECISION):
        """|value| as mpfr."""
        with _context(precision_bits):
            root = gmpy2.sqrt(mpfr(mpq(self.radicand.numerator, self.radicand.denominator)))
            return root * mpz(self.numerator) / mpz(2) ** self.denominator_pow2

    def real_imag(self, precision_bits: int = DEFAULT_PRECISION):
        """(real, imaginary) parts as mpfr."""
        mag = self.magnitude(precision_bits)
        zero = mpfr(0)
        return [(mag, zero), (zero, mag), (-mag, zero), (zero, -mag)][self.quarter_phase]

    def __complex__(self):
        re, im = self.real_imag(64)
        return complex(float(re), float(im))


def oracle_fourier_coefficient(j, m, n, mu) -> ExactCoefficient:
    """t_mu^{(j,m,n)} from the explicit sum and the exact integral I_mu.

    I_mu(2j, lam) = 2**-2j sum_l (-1)**(l - lam/2) C(2j-lam, j+mu-l) C(lam, l),
    with (-1)**(-lam/2) read as (-i)**lam.  Phases are tracked as powers of i
    on Gaussian-integer partial sums; nothing is rounded.
    """
    j = check_spin(j)
    m = check_projection(j, m)
    n = check_projection(j, n)
    mu = check_projection(j, mu)
    tj = j.twice
    jpm, jmm = (tj + m.twice) // 2, (tj - m.twice) // 2
    jpn, jmn = (tj + n.twice) // 2, (tj - n.twice) // 2
    jpmu = (tj + mu.twice) // 2
    mn = (m.twice - n.twice) // 2
    fact = [math.factorial(i) for i in range(tj + 1)]
    common = fact[jpn] * fact[jmn]

    # Gaussian integer accumulator: re + i*im
    acc = [0, 0]
    for k in range(max(0, -mn), min(jmm, jpn) + 1):
        den = fact[jmm - k] * fact[jpn - k] * fact[k + mn] * fact[k]
        weight, rem = divmod(common, den)
        assert rem == 0
        if (k + mn) % 2:
            weight = -weight
        lam = 2 * k + mn
        inner = 0
        for l in range(max(0, jpmu - tj + lam), min(lam, jpmu) + 1):
            term = math.comb(tj - lam, jpmu - l) * math.comb(lam, l)
            inner += -term if l % 2 else term
        value = weight * inner
        quarter = (-lam) % 4
        if quarter == 0:
            acc[0] += value
        elif quarter == 1:
            acc[1] += value
        elif quarter == 2:
            acc[0] -= value
        else:
            acc[1] -= value
    re, im = acc
    if re and im:
        raise AssertionError("Fourier coefficient is not a quarter-phase multiple of a real")
    radicand = Fraction(fact[jpm] * fact[jmm], common)
    if im:
        return ExactCoefficient(im, tj, 1, radicand)
    return ExactCoefficient(re, tj, 0, radicand)


def oracle_fourier_coefficients(j, m, n) -> list[ExactCoefficient]:
    """All t_mu for mu = -j, ..., j."""
    j = check_spin(j)
    return [oracle_fourier_coefficient(j, m, n, HalfInt(-j.twice + 2 * k)) for k in range(j.twice + 1)]


def exact_sum(coeffs) -> Fraction | complex:
    """Exact sum of coefficients sharing one radicand; returns a Fraction when real."""
    coeffs = [c for c in coeffs if c.numerator]
    if not coeffs:
        return Fraction(0)
    radicands = {c.radicand for c in coeffs}
    if len(radicands) != 1:
        raise ValueError("exact_sum needs a common radicand")
    (radicand,) = radicands
    parts = [Fraction(0), Fraction(0)]
    for c in coeffs:
        v = Fraction(c.numerator, 2**c.denominator_pow2)
        parts[c.quarter_phase % 2] += v if c.quarter_phase < 2 else -v
    root = math.isqrt(radicand.numerator), math.isqrt(radicand.denominator)
    if root[0] ** 2 != radicand.numerator or root[1] ** 2 != radicand.denominator:
        if parts == [0, 0]:
            return Fraction(0)
        raise ValueError("sum is irrational; compare magnitudes instead")
    scale = Fraction(root[0], root[1])
    re, im = parts[0] * scale, parts[1] * scale
    return re if im == 0 else complex(re, im)


def oracle_fourier_reconstruction(j, m, n, theta, precision_bits: int = DEFAULT_PRECISION):
    """sum_mu exp(-i mu theta) t_mu with the exact coefficients, real part, as mpfr."""
    j = check_spin(j)
    coeffs = oracle_fourier_coefficients(j, m, n)
    with _context(precision_bits):
        cos_t, sin_t = None, None
        total = []
        for k, coef in enumerate(coeffs):
            if not coef.numerator:
                continue
            mu2 = -j.twice + 2 * k
            angle = _angle(theta)
            if isinstance(angle, PiMultiple):
                cos_t, sin_t = _trig_pi(angle.ratio * Fraction(mu2, 2))
            else:
                arg = mpfr(angle) * mpz(mu2) / 2
                cos_t, sin_t = gmpy2.cos(arg), gmpy2.sin(arg)
            mag = coef.magnitude(precision_bits)
            # Re[i**q * mag * (cos - i sin)]
            total.append([mag * cos_t, mag * sin_t, -mag * cos_t, -mag * sin_t][coef.quarter_phase])
        return gmpy2.fsum(total) if total else mpfr(0)
