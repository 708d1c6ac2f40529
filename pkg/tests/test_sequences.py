import math
from fractions import Fraction

import pytest

import morankit as mk
from conftest import constant_consecutive, constant_sets, make_system


# -- level retrieval ----------------------------------------------------------

def test_get_level_constant_sets(cantor):
    assert mk.get_level(cantor, 5) == (3, (0, 2))


def test_get_level_affine_sqrt(sqrt_system):
    assert mk.get_level(sqrt_system, 2) == (4, (0, 1))


def test_get_level_single_digit():
    sys = constant_consecutive(2, 1)
    assert mk.get_level(sys, 1) == (2, (0,))


def test_get_level_is_pure(sqrt_system):
    assert mk.get_level(sqrt_system, 7) == mk.get_level(sqrt_system, 7)


def test_get_level_out_of_horizon(cantor):
    with pytest.raises(mk.ResourceLimit):
        mk.get_level(cantor, 65)
    with pytest.raises(mk.ResourceLimit):
        mk.get_level(cantor, 0)


def test_consecutive_max_digit_is_k_minus_one(sqrt_system):
    for j in range(1, 30):
        n, digits = mk.get_level(sqrt_system, j)
        ld = sqrt_system.level_data(j)
        assert digits == tuple(range(ld.k))
        assert ld.max_digit == ld.k - 1


# -- construction validation --------------------------------------------------

def test_count_at_or_above_n_rejected():
    with pytest.raises(mk.InvalidInput, match="level 1"):
        constant_consecutive(5, 5)
    with pytest.raises(mk.InvalidInput, match="level 1"):
        constant_consecutive(5, 9)


def test_growing_count_rejected_at_offending_level():
    # K_j = j crosses N-1 = 4 at level 5
    with pytest.raises(mk.InvalidInput, match="level 5"):
        make_system(mk.SequenceRule.constant(5),
                    mk.DigitRule.consecutive(mk.KRule.affine(1, 0)))


def test_digit_outside_range_rejected():
    with pytest.raises(mk.InvalidInput, match="level 1"):
        constant_sets(5, (0, 7))


def test_subdivision_below_two_rejected():
    with pytest.raises(mk.InvalidInput):
        constant_sets(1, (0,))


def test_min3_tag_enforced():
    with pytest.raises(mk.InvalidInput):
        make_system(mk.SequenceRule.constant(2, min3=True),
                    mk.DigitRule.explicit_sets([(0, 1)]))


def test_invalid_horizon():
    with pytest.raises(mk.InvalidInput):
        constant_sets(3, (0, 2), horizon=0)


def test_explicit_rule_requires_tail():
    with pytest.raises(mk.InvalidInput):
        mk.SequenceRule("explicit", values=(3, 4))


def test_full_digit_set_allowed_for_lebesgue(lebesgue):
    assert lebesgue.has_full_levels
    assert mk.get_level(lebesgue, 3) == (2, (0, 1))


def test_count_clamped_to_one():
    # floor(3/5) = 0 clamps to 1
    sys = make_system(mk.SequenceRule.constant(3),
                      mk.DigitRule.consecutive(mk.KRule.n_ratio(1, 5)))
    assert mk.get_level(sys, 1) == (3, (0,))


# -- bias ratio c --------------------------------------------------------------

def test_compute_c_cantor(cantor):
    res = mk.compute_c(cantor)
    assert res.value == Fraction(2, 3)
    assert res.exact and res.upper == Fraction(2, 3)
    assert res.attained_at == 1


def test_compute_c_lebesgue(lebesgue):
    res = mk.compute_c(lebesgue)
    assert res.value == Fraction(1, 2)
    assert res.exact


def test_compute_c_sqrt_system(sqrt_system):
    # oracle: enumerate (K_j - 1)/N_j over the horizon and confirm the tail
    # envelope (sqrt(N) - 1)/N keeps decreasing past the maximum
    ratios = [Fraction(math.isqrt(j + 2) - 1, j + 2) for j in range(1, 101)]
    assert max(ratios) == Fraction(1, 4)
    assert ratios.index(max(ratios)) + 1 == 2
    assert all(Fraction(math.isqrt(n), n) < Fraction(1, 4)
               for n in range(103, 2000))

    res = mk.compute_c(sqrt_system)
    assert res.value == Fraction(1, 4)
    assert res.attained_at == 2
    assert res.exact
    assert res.upper == Fraction(1, 4)


def test_compute_c_dominates_every_level(sqrt_system):
    res = mk.compute_c(sqrt_system)
    for j in range(1, sqrt_system.horizon + 1):
        ld = sqrt_system.level_data(j)
        assert Fraction(ld.max_digit, ld.n) <= res.value


def test_compute_c_invariant_under_horizon_extension():
    a = mk.compute_c(constant_sets(3, (0, 2), horizon=16))
    b = mk.compute_c(constant_sets(3, (0, 2), horizon=128))
    assert a.exact and b.exact and a.value == b.value


def test_compute_c_tail_bound_for_ratio_rule():
    # K = floor(N/3) approaches 1/3 from below: horizon max is not the sup
    sys = make_system(mk.SequenceRule.affine(1, 2),
                      mk.DigitRule.consecutive(mk.KRule.n_ratio(1, 3)),
                      horizon=50)
    res = mk.compute_c(sys)
    assert not res.exact
    assert res.attained_at is None
    assert res.tail_bound == Fraction(1, 3)
    assert res.value < Fraction(1, 3)
    assert res.upper == Fraction(1, 3)


def test_digit_count_ratio_uses_k(n10k7):
    res = mk.digit_count_ratio(n10k7)
    assert res.value == Fraction(7, 10)
    assert res.exact
    # bias ratio uses the max digit instead
    assert mk.compute_c(n10k7).value == Fraction(6, 10)


def test_min_n_exact():
    assert constant_sets(3, (0, 2)).min_n == 3
    assert make_system(mk.SequenceRule.affine(1, 2),
                       mk.DigitRule.consecutive(mk.KRule.constant(1)),
                       horizon=10).min_n == 3
    sys = make_system(mk.SequenceRule.explicit([5, 3], mk.SequenceRule.affine(1, 4)),
                      mk.DigitRule.consecutive(mk.KRule.constant(1)),
                      horizon=2)
    assert sys.min_n == 3  # head minimum beats the tail minimum 7


# -- growth assumption ---------------------------------------------------------

def test_growth_ratio_factorial_profile():
    # N_j = j: ratio at j=9 is log 10 / log 9!
    rule = mk.SequenceRule.affine(1, 0)
    (ratio,) = mk.growth_ratios(rule, 9, 9)
    assert ratio == pytest.approx(math.log(10) / math.log(math.factorial(9)),
                                  abs=1e-12)


def test_growth_ratio_constant_telescopes(cantor):
    check = mk.check_growth_assumption(cantor, 10, 10)
    assert check.ratio_at(10) == pytest.approx(0.1, abs=1e-15)


def test_growth_ratio_doubly_exponential_exceeds_one():
    rule = mk.SequenceRule.explicit([4, 16, 256, 65536],
                                    mk.SequenceRule.constant(65536))
    ratios = mk.growth_ratios(rule, 3, 3)
    assert ratios[0] > 1


def test_growth_window_monotonicity(cantor):
    check = mk.check_growth_assumption(cantor, 1, 20)
    assert check.nonincreasing
    assert len(check.ratios) == 20


def test_growth_empty_window(cantor):
    with pytest.raises(mk.InvalidInput):
        mk.check_growth_assumption(cantor, 5, 4)
    with pytest.raises(mk.InvalidInput):
        mk.check_growth_assumption(cantor, 1, 400)
