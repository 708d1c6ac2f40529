"""Certified scalar helpers shared across the package.

Floor computations (integer n-th roots, rational powers, natural logs) are
exact: by integer arithmetic where the exponent has a small denominator,
otherwise by interval evaluation refined until the floor is unambiguous.
Rational reductions mod 1 / mod 2 keep trigonometric arguments small so
double-precision evaluation stays accurate at huge frequencies.
"""

from __future__ import annotations

import math
from fractions import Fraction

import mpmath

# Rational upper bound for pi (355/113 > pi), for sums that must over-estimate.
PI_UPPER = Fraction(355, 113)

# Above this many bits, base**p is not formed explicitly.
_EXACT_POW_BIT_LIMIT = 1 << 22

_IV_DPS_LADDER = (50, 120, 300, 700)


def floor_nth_root(x: int, n: int) -> int:
    """Largest r >= 0 with r**n <= x, for x >= 0, n >= 1."""
    if x < 0 or n < 1:
        raise ValueError("floor_nth_root requires x >= 0 and n >= 1")
    if n == 1 or x < 2:
        return x
    if n == 2:
        return math.isqrt(x)
    if n >= x.bit_length():
        return 1
    # Newton iteration from an over-estimate, then a local fix-up.
    r = 1 << -(-x.bit_length() // n)
    while True:
        nxt = ((n - 1) * r + x // r ** (n - 1)) // n
        if nxt >= r:
            break
        r = nxt
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def _floor_from_interval(make_value, what: str) -> int:
    """Floor of a positive quantity via outward interval evaluation.

    ``make_value`` is called with the iv context after its precision is set;
    precision escalates until both interval endpoints share a floor.
    """
    iv = mpmath.iv
    saved = iv.dps
    try:
        for dps in _IV_DPS_LADDER:
            iv.dps = dps
            val = make_value(iv)
            lo = int(mpmath.floor(val.a))
            hi = int(mpmath.floor(val.b))
            if lo == hi:
                return lo
    finally:
        iv.dps = saved
    raise ArithmeticError(f"cannot certify floor of {what}")


def floor_pow(base: int, exponent: Fraction) -> int:
    """Exact floor(base**exponent) for base >= 1, exponent >= 0."""
    if base < 1 or exponent < 0:
        raise ValueError("floor_pow requires base >= 1 and exponent >= 0")
    if base == 1:
        return 1
    p, q = exponent.numerator, exponent.denominator
    if p == 0:
        return 1
    if p * base.bit_length() <= _EXACT_POW_BIT_LIMIT:
        return floor_nth_root(base ** p, q)
    # Huge denominator (e.g. an exponent taken verbatim from a binary float):
    # base**(p/q) cannot be an exact integer there, so intervals settle.
    return _floor_from_interval(
        lambda iv: iv.exp(iv.mpf(p) / iv.mpf(q) * iv.log(iv.mpf(base))),
        f"{base}^({p}/{q})",
    )


def floor_ln(x: int) -> int:
    """Exact floor(ln x) for x >= 1 (ln of an integer >= 2 is never integral)."""
    if x < 1:
        raise ValueError("floor_ln requires x >= 1")
    if x == 1:
        return 0
    return _floor_from_interval(lambda iv: iv.log(iv.mpf(x)), f"ln {x}")


def pow_leq(base: int, exponent: Fraction, bound: Fraction) -> bool | None:
    """Certified test base**exponent <= bound (negative exponents allowed).

    Returns True/False when provable, None when the interval route cannot
    separate the two sides (only possible at exact equality).
    """
    if base < 1:
        raise ValueError("pow_leq requires base >= 1")
    if bound <= 0:
        return False
    p, q = exponent.numerator, exponent.denominator
    a, b = bound.numerator, bound.denominator
    if q <= 64 and abs(p) * base.bit_length() <= _EXACT_POW_BIT_LIMIT:
        # base^(p/q) <= a/b  <=>  b^q * base^p <= a^q   (exact integers)
        if p >= 0:
            return b ** q * base ** p <= a ** q
        return b ** q <= a ** q * base ** (-p)
    iv = mpmath.iv
    saved = iv.dps
    try:
        for dps in _IV_DPS_LADDER:
            iv.dps = dps
            val = iv.exp(iv.mpf(p) / iv.mpf(q) * iv.log(iv.mpf(base)))
            rhs = iv.mpf(a) / iv.mpf(b)
            if val.b <= rhs.a:
                return True
            if val.a > rhs.b:
                return False
    finally:
        iv.dps = saved
    return None


def lt_sqrt6_over_pi(c: Fraction) -> bool:
    """Certified comparison c < sqrt(6)/pi for rational c >= 0.

    Decided through c^2 * pi^2 vs 6; pi is transcendental, so a nonzero
    rational c never lands exactly on the threshold and escalation ends.
    """
    if c <= 0:
        return True
    iv = mpmath.iv
    saved = iv.dps
    try:
        for dps in _IV_DPS_LADDER:
            iv.dps = dps
            t = (iv.mpf(c.numerator) / iv.mpf(c.denominator)) ** 2 * iv.pi ** 2
            if t.b < 6:
                return True
            if t.a > 6:
                return False
    finally:
        iv.dps = saved
    raise ArithmeticError(f"cannot separate {c} from sqrt(6)/pi")


def mod1(x: Fraction) -> Fraction:
    """x mod 1, exactly, in [0, 1)."""
    return Fraction(x.numerator % x.denominator, x.denominator)


def mod2(x: Fraction) -> Fraction:
    """x mod 2, exactly, in [0, 2)."""
    return Fraction(x.numerator % (2 * x.denominator), x.denominator)


def mod1_centered(x: Fraction) -> Fraction:
    """x mod 1 mapped into [-1/2, 1/2); keeps tiny arguments tiny, so a
    subsequent float conversion loses no relative precision."""
    r = mod1(x)
    return r - 1 if 2 * r.numerator >= r.denominator else r


def mod2_centered(x: Fraction) -> Fraction:
    """x mod 2 mapped into [-1, 1)."""
    r = mod2(x)
    return r - 2 if r.numerator >= r.denominator else r


def round_up(x: float) -> float:
    """One ulp towards +inf; keeps float error bounds on the safe side."""
    return math.nextafter(x, math.inf)
