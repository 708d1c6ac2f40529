import math
import random
from fractions import Fraction

import mpmath
import pytest

from morankit.exactmath import (PI_UPPER, floor_ln, floor_nth_root, floor_pow,
                                lt_sqrt6_over_pi, mod1, mod1_centered, mod2,
                                mod2_centered, pow_leq, round_up)


def test_floor_nth_root_small_cases():
    assert floor_nth_root(0, 3) == 0
    assert floor_nth_root(1, 5) == 1
    assert floor_nth_root(8, 3) == 2
    assert floor_nth_root(7, 3) == 1
    assert floor_nth_root(10 ** 12, 4) == 1000
    assert floor_nth_root(2, 64) == 1


def test_floor_nth_root_random_against_bisection():
    rng = random.Random(0)
    for _ in range(300):
        n = rng.randint(2, 9)
        x = rng.randint(0, 10 ** rng.randint(1, 24))
        r = floor_nth_root(x, n)
        # independent check by bisection
        lo, hi = 0, x + 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if mid ** n <= x:
                lo = mid
            else:
                hi = mid
        assert r == lo


def test_floor_nth_root_perfect_powers():
    for base in (2, 3, 10, 123):
        for n in (2, 3, 5):
            x = base ** n
            assert floor_nth_root(x, n) == base
            assert floor_nth_root(x - 1, n) == base - 1
            assert floor_nth_root(x + 1, n) == base


def test_floor_pow_exact_fractions():
    assert floor_pow(4, Fraction(1, 2)) == 2
    assert floor_pow(16, Fraction(1, 4)) == 2
    assert floor_pow(5, Fraction(1, 2)) == 2
    assert floor_pow(3, Fraction(1, 10)) == 1
    assert floor_pow(1, Fraction(3, 4)) == 1
    assert floor_pow(81, Fraction(3, 4)) == 27
    assert floor_pow(100, Fraction(2)) == 10000


def test_floor_pow_huge_denominator():
    # binary-float exponents carry huge power-of-two denominators
    s = Fraction(0.9)
    assert s.denominator > 10 ** 9
    expected = int(mpmath.floor(mpmath.power(100, mpmath.mpf(0.9))))
    assert floor_pow(100, s) == expected == 63


def test_floor_ln():
    assert floor_ln(1) == 0
    assert floor_ln(2) == 0
    assert floor_ln(3) == 1
    assert floor_ln(8) == 2
    assert floor_ln(20) == 2
    assert floor_ln(21) == 3
    assert floor_ln(10 ** 6) == 13


def test_pow_leq():
    assert pow_leq(4, Fraction(-1, 2), Fraction(1, 2)) is True
    assert pow_leq(4, Fraction(-1, 2), Fraction(1, 4)) is False
    assert pow_leq(9, Fraction(1, 2), Fraction(3)) is True
    assert pow_leq(9, Fraction(1, 2), Fraction(29, 10)) is False
    assert pow_leq(103, Fraction(-1, 2), Fraction(1, 4)) is True


def test_lt_sqrt6_over_pi():
    assert lt_sqrt6_over_pi(Fraction(7, 10))
    assert lt_sqrt6_over_pi(Fraction(0))
    assert not lt_sqrt6_over_pi(Fraction(39, 50))          # 0.78
    assert lt_sqrt6_over_pi(Fraction(7796, 10000))
    assert not lt_sqrt6_over_pi(Fraction(7797, 10000))


def test_pi_upper_really_is_upper():
    assert float(PI_UPPER) > math.pi


def test_mod_reductions():
    assert mod1(Fraction(7, 3)) == Fraction(1, 3)
    assert mod1(Fraction(-1, 3)) == Fraction(2, 3)
    assert mod1(Fraction(4)) == 0
    assert mod2(Fraction(7, 2)) == Fraction(3, 2)
    assert mod2(Fraction(-1, 2)) == Fraction(3, 2)
    assert mod2(Fraction(8)) == 0


def test_centered_reductions_keep_tiny_arguments_tiny():
    eps = Fraction(1, 10 ** 15)
    assert mod1_centered(-eps) == -eps
    assert mod2_centered(-eps) == -eps
    assert mod1_centered(Fraction(3, 4)) == Fraction(-1, 4)
    assert mod1_centered(Fraction(1, 4)) == Fraction(1, 4)
    assert mod2_centered(Fraction(7, 2)) == Fraction(-1, 2)
    assert mod1_centered(Fraction(1, 2)) == Fraction(-1, 2)


def test_round_up_moves_up():
    assert round_up(1.0) > 1.0
    assert round_up(0.0) > 0.0


def test_floor_inputs_validated():
    with pytest.raises(ValueError):
        floor_nth_root(-1, 2)
    with pytest.raises(ValueError):
        floor_pow(0, Fraction(1, 2))
    with pytest.raises(ValueError):
        floor_ln(0)
