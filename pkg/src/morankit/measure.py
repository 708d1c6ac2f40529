"""The canonical Moran measure and its Fourier transform.

The measure splits mass equally among the kept children at every level,
so it is the infinite convolution of one discrete factor per level and
its transform is the infinite product of the factors' transforms.  Each
factor is an exponential sum over the level's digit atoms; consecutive
digit sets admit the closed Dirichlet-kernel form.

Truncation is certified: |factor_j(xi) - 1| <= 2*pi*avg(B_j)*|xi|/(N_1..N_j),
so once the partial product stops at level n the remaining factors multiply
to within exp(S_n) - 1 of 1, where

    S_n = 2*pi * c * |xi| * m / ((m-1) * N_1...N_n),   m = min_j N_j,

computed here with a rational upper bound for pi and outward float
rounding.  Every sample therefore carries a machine-checkable error bar
valid for the *infinite* product, not just the horizon.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import mpmath

from .errors import InvalidInput, ResourceLimit
from .exactmath import (PI_UPPER, lt_sqrt6_over_pi, mod1_centered,
                        mod2_centered, round_up)
from .geometry import DEFAULT_ENUMERATION_CAP
from .sequences import DigitSystem, SupremumResult, compute_c, digit_count_ratio

Frequency = Union[int, float, Fraction]

_ANGLE_BITS = 56  # fixed-point bits for exact-rational angle reduction


@dataclass(frozen=True)
class LevelFactor:
    """One convolution factor: atoms B_j placed at multiples of the level
    scale 1/(N_1...N_j), each carrying weight 1/K_j."""

    level: int
    atoms: tuple[int, ...]
    scale: Fraction
    weight: Fraction


@dataclass(frozen=True)
class SpectralSample:
    """Transform value at one frequency with a certified truncation bound:
    |value - muhat(xi)| <= error_bound, and error_bound covers the whole
    infinite tail of the product."""

    xi: Union[int, float]
    value: complex
    error_bound: float
    levels_used: int

    @property
    def modulus(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class NonDecayBound:
    """Certified positive floor for |muhat| along the scale sequence
    N_1...N_n, for consecutive digit systems with N_j >= 3.

    The floor is (1 - c^2 pi^2/6) * c0 with c = sup_j K_j/N_j and
    c0 = prod_j (1 - pi^2/(6*9^j)); it applies whenever c < sqrt(6)/pi.
    ``status`` is "refused" (with lower_bound None) when c is too large,
    which is a value, not an error: nothing is concluded there.
    """

    status: str
    c: SupremumResult
    c0: Optional[float]
    c0_error: Optional[float]
    lower_bound: Optional[float]
    product_levels: int

    @property
    def applicable(self) -> bool:
        return self.status == "certified"


def level_factor(sys: DigitSystem, j: int) -> LevelFactor:
    ld = sys.level_data(j)
    return LevelFactor(level=j, atoms=sys.digits_at(j),
                       scale=Fraction(1, sys.prefix_product(j)),
                       weight=Fraction(1, ld.k))


def _unit_exp(turns: Fraction) -> complex:
    """exp(-2*pi*i*turns) with the angle reduced exactly mod 1 first
    (centered, so tiny angles keep full relative precision)."""
    r = mod1_centered(turns)
    return cmath.exp(-2j * math.pi * (r.numerator / r.denominator))


def factor_value(sys: DigitSystem, j: int, xi: Frequency) -> complex:
    """Transform of the level-j factor at xi.

    Consecutive digit sets use the Dirichlet closed form
    exp(-pi*i*(K-1)*theta) * sin(pi*K*theta) / (K*sin(pi*theta)) with
    theta = xi/(N_1...N_j); integrality of theta (factor exactly 1) and of
    K*theta (factor exactly 0) is detected in exact rational arithmetic
    before any floating evaluation.
    """
    ld = sys.level_data(j)
    theta = Fraction(xi) / sys.prefix_product(j)
    if theta.denominator == 1:
        return complex(1.0)
    if ld.consecutive:
        k = ld.k
        if k == 1:
            return complex(1.0)
        k_theta = k * theta
        if k_theta.denominator == 1:
            return complex(0.0)
        num = math.sin(math.pi * float(mod2_centered(k_theta)))
        den = k * math.sin(math.pi * float(mod2_centered(theta)))
        phase = cmath.exp(-1j * math.pi * float(mod2_centered((k - 1) * theta)))
        return phase * (num / den)
    total = 0j
    for b in sys.digits_at(j):
        total += _unit_exp(b * theta)
    return total / ld.k


def _tail_sum_bound(sys: DigitSystem, abs_xi: Fraction, c_upper: Fraction,
                    n: int) -> Fraction:
    """Rational upper bound for sum_{j>n} 2*pi*avg(B_j)*|xi|/(N_1..N_j)."""
    m = sys.min_n
    return 2 * PI_UPPER * c_upper * abs_xi * Fraction(m, (m - 1) * sys.prefix_product(n))


def _tail_error(sys: DigitSystem, abs_xi: Fraction, c_upper: Fraction,
                n: int, magnitude: float) -> float:
    """Certified |partial - muhat| bound after truncating at level n.

    The tail multiplies the partial by T with |T - 1| <= min(2, e^S - 1)
    where S bounds the summed factor deviations (every factor has modulus
    at most 1, hence the cap at 2)."""
    if magnitude == 0.0:
        return 0.0
    s_n = _tail_sum_bound(sys, abs_xi, c_upper, n)
    if s_n == 0:
        return 0.0
    sf = round_up(float(s_n))
    rel = 2.0 if sf > 1.0 else round_up(math.expm1(sf))
    return round_up(round_up(magnitude) * rel)


def _certified_product(sys: DigitSystem, xi_frac: Fraction, start: int,
                       tol: float) -> tuple[complex, float, int]:
    """Multiply factors from ``start`` until the certified tail error bound
    drops below tol (or the horizon runs out; best bound is then reported).
    Returns (value, error_bound, levels_used)."""
    if tol <= 0:
        raise InvalidInput("invalid-tolerance", f"tol must be > 0, got {tol}")
    c_upper = compute_c(sys).upper
    abs_xi = abs(xi_frac)
    value = complex(1.0)
    n = start - 1
    while True:
        err = _tail_error(sys, abs_xi, c_upper, n, abs(value))
        if err <= tol or n >= sys.horizon:
            return value, err, n - start + 1
        n += 1
        value *= factor_value(sys, n, xi_frac)


def mu_hat(sys: DigitSystem, xi: Frequency, tol: float = 1e-10) -> SpectralSample:
    """Transform of the Moran measure at xi, to certified tolerance tol."""
    xi_frac = Fraction(xi)
    value, err, used = _certified_product(sys, xi_frac, 1, tol)
    shown = xi if isinstance(xi, int) else float(xi)
    return SpectralSample(xi=shown, value=value, error_bound=err, levels_used=used)


def mu_hat_bruteforce(sys: DigitSystem, xi: Frequency, n: int,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> complex:
    """Oracle: mean of exp(-2*pi*i*xi*x) over all level-n endpoints.

    Equals the product of the first n factor transforms (partial
    convolution); angles are reduced with exact integer arithmetic so the
    result stays accurate at large frequencies.
    """
    if not 1 <= n <= sys.horizon:
        raise ResourceLimit("level-out-of-horizon",
                            f"level {n} outside 1..{sys.horizon}")
    count = 1
    for j in range(1, n + 1):
        count *= sys.level_data(j).k
        if count > cap:
            raise ResourceLimit("enumeration-cap",
                                f"level {n} holds more than {cap} endpoints")
    xi_frac = Fraction(xi)
    p, q = xi_frac.numerator, xi_frac.denominator
    nums = [0]
    for j in range(1, n + 1):
        n_j = sys.level_data(j).n
        digits = sys.digits_at(j)
        nums = [x * n_j + b for x in nums for b in digits]
    qd = q * sys.prefix_product(n)
    scale = -2.0 * math.pi / (1 << _ANGLE_BITS)
    total = 0j
    for num in nums:
        t = ((p * num) % qd << _ANGLE_BITS) // qd
        total += cmath.exp(1j * (scale * t))
    return total / len(nums)


def mu_hat_at_scale(sys: DigitSystem, n: int, tol: float = 1e-10) -> SpectralSample:
    """Transform at the scale frequency N_1...N_n.

    The first n factors have integer arguments there and equal 1 exactly
    (cross-checked), so only tail factors are evaluated; their arguments
    are the exact rationals 1/(N_{n+1}...N_{n+i}), never a huge float.
    """
    if not 0 <= n <= sys.horizon:
        raise ResourceLimit("level-out-of-horizon",
                            f"scale level {n} outside 0..{sys.horizon}")
    scale = sys.prefix_product(n)
    for j in range(1, n + 1):
        head = factor_value(sys, j, scale)
        if head != 1.0:
            raise ArithmeticError(
                f"head factor at level {j} is {head}, expected exactly 1")
    value, err, used = _certified_product(sys, Fraction(scale), n + 1, tol)
    return SpectralSample(xi=scale, value=value, error_bound=err, levels_used=used)


def nondecay_certificate(sys: DigitSystem, dps: int = 60,
                         product_levels: int = 40) -> NonDecayBound:
    """Non-decay certificate along the scale sequence, or a refusal.

    Requires consecutive digit sets and N_j >= 3 at every level (errors
    otherwise).  Emits lower_bound with outward rounding so that
    |muhat(N_1...N_n)| >= lower_bound holds for every n.
    """
    if not sys.all_consecutive:
        raise InvalidInput("digit-rule-not-consecutive",
                           "the non-decay bound needs digit sets {0..K-1}")
    if sys.min_n < 3:
        raise InvalidInput("subdivision-below-3",
                           f"min N over all levels is {sys.min_n}, need >= 3")
    cres = digit_count_ratio(sys)
    c = cres.upper
    if not lt_sqrt6_over_pi(c):
        return NonDecayBound(status="refused", c=cres, c0=None, c0_error=None,
                             lower_bound=None, product_levels=0)
    iv = mpmath.iv
    saved = iv.dps
    try:
        iv.dps = dps
        prod = iv.mpf(1)
        for j in range(1, product_levels + 1):
            prod *= 1 - iv.pi ** 2 / (6 * iv.mpf(9) ** j)
        # Remaining factors multiply to within [1 - pi^2/(48*9^J), 1].
        tail_lo = 1 - iv.pi ** 2 / (48 * iv.mpf(9) ** product_levels)
        c0_iv = prod * iv.mpf([mpmath.mpf(tail_lo.a), mpmath.mpf(1)])
        c_iv = iv.mpf(c.numerator) / iv.mpf(c.denominator)
        bound_iv = (1 - c_iv ** 2 * iv.pi ** 2 / 6) * c0_iv
        c0_mid = float(mpmath.mpf(c0_iv.mid.a))
        c0_err = max(float(mpmath.mpf(c0_iv.delta.b)), 1e-15)
        lower = math.nextafter(float(mpmath.mpf(bound_iv.a)), -math.inf)
    finally:
        iv.dps = saved
    return NonDecayBound(status="certified", c=cres, c0=c0_mid, c0_error=c0_err,
                         lower_bound=lower, product_levels=product_levels)
