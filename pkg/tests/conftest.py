from fractions import Fraction

import pytest

import morankit as mk


def make_system(n_rule, b_rule, horizon=64):
    return mk.DigitSystem(n_rule=n_rule, b_rule=b_rule, horizon=horizon)


def constant_sets(n, digits, horizon=64):
    return make_system(mk.SequenceRule.constant(n),
                       mk.DigitRule.explicit_sets([tuple(digits)]),
                       horizon=horizon)


def constant_consecutive(n, k, horizon=64):
    return make_system(mk.SequenceRule.constant(n),
                       mk.DigitRule.consecutive(mk.KRule.constant(k)),
                       horizon=horizon)


@pytest.fixture
def cantor():
    return constant_sets(3, (0, 2))


@pytest.fixture
def lebesgue():
    return constant_sets(2, (0, 1), horizon=200)


@pytest.fixture
def n4k2():
    return constant_consecutive(4, 2)


@pytest.fixture
def n4k3():
    return constant_consecutive(4, 3)


@pytest.fixture
def n10k7():
    return constant_consecutive(10, 7)


@pytest.fixture
def sqrt_system():
    # N_j = j + 2 with K_j = floor(sqrt(N_j))
    return make_system(mk.SequenceRule.affine(1, 2),
                       mk.DigitRule.consecutive(mk.KRule.n_power(Fraction(1, 2))),
                       horizon=100)


@pytest.fixture
def band_system():
    # First level 3/{0,1}, then 30/{0..20}: bias 2/3 (obstruction boundary)
    # while the count ratio stays at 0.7 (non-decay applies).
    n_rule = mk.SequenceRule.explicit([3], mk.SequenceRule.constant(30))
    k_rule = mk.KRule.explicit([2], mk.KRule.constant(21))
    return make_system(n_rule, mk.DigitRule.consecutive(k_rule))
