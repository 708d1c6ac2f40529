from fractions import Fraction

import pytest

import morankit as mk
from morankit import specfile
from conftest import make_system

CANTOR_TEXT = """\
# middle-thirds style system
horizon = 64
n.kind = constant
n.value = 3
b.kind = sets
b.sets = 0,2
"""


def test_load_cantor():
    sys = specfile.loads(CANTOR_TEXT)
    assert sys.horizon == 64
    assert mk.get_level(sys, 7) == (3, (0, 2))


def test_round_trip_simple():
    sys = specfile.loads(CANTOR_TEXT)
    again = specfile.loads(specfile.dumps(sys))
    assert again.n_rule == sys.n_rule
    assert again.b_rule == sys.b_rule
    assert again.horizon == sys.horizon


@pytest.mark.parametrize("system", [
    make_system(mk.SequenceRule.affine(1, 2),
                mk.DigitRule.consecutive(mk.KRule.n_power(Fraction(1, 2))),
                horizon=40),
    make_system(mk.SequenceRule.power(2),
                mk.DigitRule.consecutive(mk.KRule.constant(1)),
                horizon=10),
    make_system(mk.SequenceRule.explicit([3, 5], mk.SequenceRule.affine(1, 4)),
                mk.DigitRule.consecutive(
                    mk.KRule.explicit([2, 2], mk.KRule.n_ratio(1, 3))),
                horizon=30),
    make_system(mk.SequenceRule.constant(9),
                mk.DigitRule.consecutive(mk.KRule.n_log()),
                horizon=12),
    make_system(mk.SequenceRule.constant(6),
                mk.DigitRule.explicit_sets([(0, 2), (0, 1, 5)]),
                horizon=12),
    make_system(mk.SequenceRule.constant(3, min3=True),
                mk.DigitRule.consecutive(mk.KRule.constant(2)),
                horizon=12),
])
def test_round_trip_all_rule_shapes(system):
    text = specfile.dumps(system)
    again = specfile.loads(text)
    assert again.n_rule == system.n_rule
    assert again.b_rule == system.b_rule
    assert again.horizon == system.horizon
    assert specfile.dumps(again) == text


def test_exponent_kept_exact():
    sys = make_system(mk.SequenceRule.affine(1, 2),
                      mk.DigitRule.consecutive(mk.KRule.n_power(Fraction(1, 3))),
                      horizon=20)
    again = specfile.loads(specfile.dumps(sys))
    assert again.b_rule.k_rule.exponent == Fraction(1, 3)


def test_unknown_key_rejected():
    with pytest.raises(mk.InvalidInput, match="unknown keys"):
        specfile.loads(CANTOR_TEXT + "color = blue\n")


def test_duplicate_key_rejected():
    with pytest.raises(mk.InvalidInput, match="duplicate"):
        specfile.loads(CANTOR_TEXT + "horizon = 9\n")


def test_missing_key_rejected():
    with pytest.raises(mk.InvalidInput, match="missing"):
        specfile.loads("horizon = 4\nn.kind = constant\nn.value = 3\n")


def test_bad_integer_rejected():
    with pytest.raises(mk.InvalidInput, match="not an integer"):
        specfile.loads(CANTOR_TEXT.replace("n.value = 3", "n.value = three"))


def test_bad_kind_rejected():
    with pytest.raises(mk.InvalidInput, match="n.kind"):
        specfile.loads(CANTOR_TEXT.replace("constant", "geometric"))


def test_line_without_equals_rejected():
    with pytest.raises(mk.InvalidInput, match="line 1"):
        specfile.loads("horizon 64\n")


def test_min3_parsing():
    text = ("horizon = 8\nn.kind = constant\nn.value = 4\nn.min3 = true\n"
            "b.kind = consecutive\nk.kind = constant\nk.value = 2\n")
    assert specfile.loads(text).n_rule.min3
    with pytest.raises(mk.InvalidInput):
        specfile.loads(text.replace("true", "yes"))


def test_file_round_trip(tmp_path):
    path = tmp_path / "system.spec"
    path.write_text(CANTOR_TEXT)
    sys = specfile.load(str(path))
    out = tmp_path / "copy.spec"
    specfile.dump(sys, str(out))
    assert specfile.load(str(out)).n_rule == sys.n_rule
