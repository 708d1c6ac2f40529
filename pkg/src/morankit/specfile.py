"""Text spec files describing digit systems.

Line-oriented ``key = value`` schema; ``#`` starts a comment, blank lines
are ignored.  Unknown or duplicate keys are errors.  Keys:

    horizon = 64

    n.kind = constant | affine | power | explicit
    n.value = 3              # constant: N_j = value
    n.a = 1                  # affine:   N_j = a*j + b
    n.b = 2
    n.base = 2               # power:    N_j = base**j
    n.values = 3,4,5         # explicit head values ...
    n.tail.kind = constant   # ... then this rule (constant/affine/power)
    n.tail.value = 5
    n.min3 = true            # optional, demand N_j >= 3

    b.kind = consecutive | sets
    b.sets = 0,2 | 0,1       # sets: '|'-separated digit sets; the last
                             # one repeats for all later levels

    k.kind = constant | affine | power | explicit | n-power | n-ratio | n-log
    k.value / k.a,k.b / k.base / k.values (+ k.tail.*)   # as for n.*
    k.exponent = 1/2         # n-power:  K_j = floor(N_j ** exponent)
    k.num = 1                # n-ratio:  K_j = floor(N_j * num / den)
    k.den = 3
                             # n-log:    K_j = floor(ln N_j), no parameters

The same schema is emitted by :func:`dumps` and by the generator, so
generated systems round-trip through the loader.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidInput
from .sequences import DigitRule, DigitSystem, KRule, SequenceRule


def _parse_lines(text: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidInput("invalid-spec",
                               f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key or not value:
            raise InvalidInput("invalid-spec",
                               f"line {lineno}: empty key or value")
        if key in entries:
            raise InvalidInput("invalid-spec", f"duplicate key {key!r}")
        entries[key] = value
    return entries


def _take(entries: dict[str, str], key: str) -> str:
    if key not in entries:
        raise InvalidInput("invalid-spec", f"missing key {key!r}")
    return entries.pop(key)


def _take_int(entries: dict[str, str], key: str) -> int:
    value = _take(entries, key)
    try:
        return int(value)
    except ValueError:
        raise InvalidInput("invalid-spec",
                           f"key {key!r}: {value!r} is not an integer") from None


def _take_int_list(entries: dict[str, str], key: str) -> list[int]:
    value = _take(entries, key)
    try:
        return [int(part) for part in value.split(",")]
    except ValueError:
        raise InvalidInput("invalid-spec",
                           f"key {key!r}: {value!r} is not a comma-separated "
                           "integer list") from None


def _parse_fraction(key: str, value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput("invalid-spec",
                           f"key {key!r}: {value!r} is not a fraction") from None


def _parse_sequence_rule(entries: dict[str, str], prefix: str,
                         min3: bool = False) -> SequenceRule:
    kind = _take(entries, f"{prefix}.kind")
    if kind == "constant":
        return SequenceRule.constant(_take_int(entries, f"{prefix}.value"), min3=min3)
    if kind == "affine":
        return SequenceRule.affine(_take_int(entries, f"{prefix}.a"),
                                   _take_int(entries, f"{prefix}.b"), min3=min3)
    if kind == "power":
        return SequenceRule.power(_take_int(entries, f"{prefix}.base"), min3=min3)
    if kind == "explicit":
        values = _take_int_list(entries, f"{prefix}.values")
        tail = _parse_sequence_rule(entries, f"{prefix}.tail")
        return SequenceRule.explicit(values, tail, min3=min3)
    raise InvalidInput("invalid-spec", f"unknown {prefix}.kind {kind!r}")


def _parse_k_rule(entries: dict[str, str], prefix: str = "k") -> KRule:
    kind = _take(entries, f"{prefix}.kind")
    if kind == "constant":
        return KRule.constant(_take_int(entries, f"{prefix}.value"))
    if kind == "affine":
        return KRule.affine(_take_int(entries, f"{prefix}.a"),
                            _take_int(entries, f"{prefix}.b"))
    if kind == "power":
        return KRule.power(_take_int(entries, f"{prefix}.base"))
    if kind == "explicit":
        values = _take_int_list(entries, f"{prefix}.values")
        tail = _parse_k_rule(entries, f"{prefix}.tail")
        return KRule.explicit(values, tail)
    if kind == "n-power":
        key = f"{prefix}.exponent"
        return KRule.n_power(_parse_fraction(key, _take(entries, key)))
    if kind == "n-ratio":
        return KRule.n_ratio(_take_int(entries, f"{prefix}.num"),
                             _take_int(entries, f"{prefix}.den"))
    if kind == "n-log":
        return KRule.n_log()
    raise InvalidInput("invalid-spec", f"unknown {prefix}.kind {kind!r}")


def _parse_digit_sets(value: str) -> list[list[int]]:
    sets = []
    for i, chunk in enumerate(value.split("|"), start=1):
        try:
            digits = [int(part) for part in chunk.split(",")]
        except ValueError:
            raise InvalidInput("invalid-spec",
                               f"digit set #{i}: {chunk.strip()!r} is not a "
                               "comma-separated integer list") from None
        sets.append(digits)
    return sets


def loads(text: str) -> DigitSystem:
    """Build a digit system from spec text (validates all levels)."""
    entries = _parse_lines(text)
    horizon = _take_int(entries, "horizon")
    min3 = False
    if "n.min3" in entries:
        flag = _take(entries, "n.min3")
        if flag not in ("true", "false"):
            raise InvalidInput("invalid-spec", "n.min3 must be true or false")
        min3 = flag == "true"
    n_rule = _parse_sequence_rule(entries, "n", min3=min3)
    b_kind = _take(entries, "b.kind")
    if b_kind == "consecutive":
        b_rule = DigitRule.consecutive(_parse_k_rule(entries))
    elif b_kind == "sets":
        b_rule = DigitRule.explicit_sets(_parse_digit_sets(_take(entries, "b.sets")))
    else:
        raise InvalidInput("invalid-spec", f"unknown b.kind {b_kind!r}")
    if entries:
        stray = ", ".join(sorted(entries))
        raise InvalidInput("invalid-spec", f"unknown keys: {stray}")
    return DigitSystem(n_rule=n_rule, b_rule=b_rule, horizon=horizon)


def load(path: str) -> DigitSystem:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read())


def _dump_sequence_rule(rule: SequenceRule, prefix: str, out: list[str]):
    out.append(f"{prefix}.kind = {rule.kind}")
    if rule.kind == "constant":
        out.append(f"{prefix}.value = {rule.value}")
    elif rule.kind == "affine":
        out.append(f"{prefix}.a = {rule.a}")
        out.append(f"{prefix}.b = {rule.b}")
    elif rule.kind == "power":
        out.append(f"{prefix}.base = {rule.base}")
    else:
        out.append(f"{prefix}.values = {','.join(str(v) for v in rule.values)}")
        _dump_sequence_rule(rule.tail, f"{prefix}.tail", out)


def _dump_k_rule(rule: KRule, prefix: str, out: list[str]):
    out.append(f"{prefix}.kind = {rule.kind}")
    if rule.kind == "constant":
        out.append(f"{prefix}.value = {rule.value}")
    elif rule.kind == "affine":
        out.append(f"{prefix}.a = {rule.a}")
        out.append(f"{prefix}.b = {rule.b}")
    elif rule.kind == "power":
        out.append(f"{prefix}.base = {rule.base}")
    elif rule.kind == "explicit":
        out.append(f"{prefix}.values = {','.join(str(v) for v in rule.values)}")
        _dump_k_rule(rule.tail, f"{prefix}.tail", out)
    elif rule.kind == "n-power":
        exp = rule.exponent
        out.append(f"{prefix}.exponent = {exp.numerator}/{exp.denominator}")
    elif rule.kind == "n-ratio":
        out.append(f"{prefix}.num = {rule.num}")
        out.append(f"{prefix}.den = {rule.den}")


def dumps(sys: DigitSystem) -> str:
    """Spec text for a digit system; loads() of the result rebuilds it."""
    out = [f"horizon = {sys.horizon}"]
    _dump_sequence_rule(sys.n_rule, "n", out)
    if sys.n_rule.min3:
        out.append("n.min3 = true")
    if sys.b_rule.kind == "consecutive":
        out.append("b.kind = consecutive")
        _dump_k_rule(sys.b_rule.k_rule, "k", out)
    else:
        out.append("b.kind = sets")
        rendered = " | ".join(",".join(str(d) for d in s) for s in sys.b_rule.sets)
        out.append(f"b.sets = {rendered}")
    return "\n".join(out) + "\n"


def dump(sys: DigitSystem, path: str):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(sys))
