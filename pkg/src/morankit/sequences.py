"""Digit systems: the per-level data (N_j, B_j) behind a Moran construction.

A system is described by finite rules, so the whole infinite sequence of
levels is determined, plus an inspection horizon J up to which levels are
materialized and validated.  Level j splits the current interval into N_j
equal parts and keeps the parts indexed by the digit set B_j (K_j = #B_j).

Every quantity that mathematically ranges over *all* levels (the bias
ratio c = sup_j max(B_j)/N_j, min_j N_j, ...) reports whether its value is
provable from the rules (``exact``) or only observed up to the horizon,
and in the latter case carries a certified tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .errors import InvalidInput, ResourceLimit
from .exactmath import floor_ln, floor_nth_root, floor_pow, pow_leq

SEQUENCE_KINDS = ("constant", "affine", "power", "explicit")
COUNT_KINDS = SEQUENCE_KINDS + ("n-power", "n-ratio", "n-log")


def _require(cond: bool, reason: str, message: str):
    if not cond:
        raise InvalidInput(reason, message)


@dataclass(frozen=True)
class SequenceRule:
    """Rule producing one positive integer per level.

    Kinds: ``constant`` (value), ``affine`` (a*j + b), ``power`` (base**j),
    ``explicit`` (listed head values, then a non-explicit tail rule
    evaluated at the absolute level index).  ``min3`` tags a rule whose
    values must stay >= 3 instead of the default >= 2 when it is used as a
    subdivision rule.
    """

    kind: str
    value: int = 0
    a: int = 0
    b: int = 0
    base: int = 0
    values: tuple[int, ...] = ()
    tail: Optional["SequenceRule"] = None
    min3: bool = False

    def __post_init__(self):
        _require(self.kind in SEQUENCE_KINDS, "invalid-rule",
                 f"unknown sequence rule kind {self.kind!r}")
        if self.kind == "constant":
            _require(self.value >= 1, "invalid-rule", "constant value must be >= 1")
        elif self.kind == "affine":
            _require(self.a >= 0 and self.b >= 0 and self.a + self.b >= 1,
                     "invalid-rule", "affine rule needs a >= 0, b >= 0, a+b >= 1")
        elif self.kind == "power":
            _require(self.base >= 2, "invalid-rule", "power rule base must be >= 2")
        else:
            _require(len(self.values) >= 1, "invalid-rule",
                     "explicit rule needs at least one value")
            _require(all(v >= 1 for v in self.values), "invalid-rule",
                     "explicit values must be positive integers")
            _require(self.tail is not None, "invalid-rule",
                     "explicit rule must carry a tail rule")
            _require(self.tail.kind != "explicit", "invalid-rule",
                     "tail rule must be constant, affine, or power")

    @classmethod
    def constant(cls, value: int, min3: bool = False) -> "SequenceRule":
        return cls("constant", value=value, min3=min3)

    @classmethod
    def affine(cls, a: int, b: int, min3: bool = False) -> "SequenceRule":
        return cls("affine", a=a, b=b, min3=min3)

    @classmethod
    def power(cls, base: int, min3: bool = False) -> "SequenceRule":
        return cls("power", base=base, min3=min3)

    @classmethod
    def explicit(cls, values: Sequence[int], tail: "SequenceRule",
                 min3: bool = False) -> "SequenceRule":
        return cls("explicit", values=tuple(values), tail=tail, min3=min3)

    def value_at(self, j: int) -> int:
        if j < 1:
            raise InvalidInput("invalid-level", f"level index {j} must be >= 1")
        if self.kind == "constant":
            return self.value
        if self.kind == "affine":
            return self.a * j + self.b
        if self.kind == "power":
            return self.base ** j
        if j <= len(self.values):
            return self.values[j - 1]
        return self.tail.value_at(j)

    def eventually_constant(self) -> Optional[tuple[int, int]]:
        """(start level, value) once the rule is constant, else None."""
        if self.kind == "constant":
            return (1, self.value)
        if self.kind == "affine":
            return (1, self.b) if self.a == 0 else None
        if self.kind == "power":
            return None
        ec = self.tail.eventually_constant()
        if ec is None:
            return None
        return (max(len(self.values) + 1, ec[0]), ec[1])

    def nondecreasing(self) -> bool:
        """True when the rule provably never decreases."""
        if self.kind in ("constant", "power"):
            return True
        if self.kind == "affine":
            return self.a >= 0
        head_ok = all(x <= y for x, y in zip(self.values, self.values[1:]))
        splice_ok = self.values[-1] <= self.tail.value_at(len(self.values) + 1)
        return head_ok and splice_ok and self.tail.nondecreasing()

    def strictly_increasing(self) -> bool:
        if self.kind == "constant":
            return False
        if self.kind == "affine":
            return self.a >= 1
        if self.kind == "power":
            return self.base >= 2
        head_ok = all(x < y for x, y in zip(self.values, self.values[1:]))
        splice_ok = self.values[-1] < self.tail.value_at(len(self.values) + 1)
        return head_ok and splice_ok and self.tail.strictly_increasing()

    def min_from(self, j0: int) -> int:
        """Exact minimum of the rule over all levels j >= j0."""
        if self.kind == "constant":
            return self.value
        if self.kind == "affine":
            return self.a * j0 + self.b
        if self.kind == "power":
            return self.base ** j0
        cands = [v for i, v in enumerate(self.values, start=1) if i >= j0]
        cands.append(self.tail.min_from(max(j0, len(self.values) + 1)))
        return min(cands)


@dataclass(frozen=True)
class KRule:
    """Rule producing the kept-digit count K_j for consecutive digit sets.

    Plain kinds mirror SequenceRule.  The remaining kinds derive K_j from
    the level's subdivision count: ``n-power`` is floor(N_j**exponent),
    ``n-ratio`` is floor(N_j*num/den), ``n-log`` is floor(ln N_j).  Values
    of 0 are clamped to 1; a value above N_j - 1 is a construction error.
    """

    kind: str
    value: int = 0
    a: int = 0
    b: int = 0
    base: int = 0
    values: tuple[int, ...] = ()
    tail: Optional["KRule"] = None
    exponent: Optional[Fraction] = None
    num: int = 0
    den: int = 0

    def __post_init__(self):
        _require(self.kind in COUNT_KINDS, "invalid-rule",
                 f"unknown count rule kind {self.kind!r}")
        if self.kind == "constant":
            _require(self.value >= 1, "invalid-rule", "constant count must be >= 1")
        elif self.kind == "affine":
            _require(self.a >= 0 and self.b >= 0 and self.a + self.b >= 1,
                     "invalid-rule", "affine count rule needs a,b >= 0, a+b >= 1")
        elif self.kind == "power":
            _require(self.base >= 1, "invalid-rule", "power count base must be >= 1")
        elif self.kind == "explicit":
            _require(len(self.values) >= 1 and all(v >= 1 for v in self.values),
                     "invalid-rule", "explicit counts must be positive integers")
            _require(self.tail is not None and self.tail.kind != "explicit",
                     "invalid-rule", "explicit count rule needs a simple tail rule")
        elif self.kind == "n-power":
            _require(self.exponent is not None and 0 < self.exponent <= 1,
                     "invalid-rule", "n-power exponent must lie in (0, 1]")
        elif self.kind == "n-ratio":
            _require(self.num >= 1 and self.den >= 1, "invalid-rule",
                     "n-ratio needs positive num/den")
            _require(Fraction(self.num, self.den) < 1, "invalid-rule",
                     "n-ratio must be a fraction below 1")

    @classmethod
    def constant(cls, value: int) -> "KRule":
        return cls("constant", value=value)

    @classmethod
    def affine(cls, a: int, b: int) -> "KRule":
        return cls("affine", a=a, b=b)

    @classmethod
    def power(cls, base: int) -> "KRule":
        return cls("power", base=base)

    @classmethod
    def explicit(cls, values: Sequence[int], tail: "KRule") -> "KRule":
        return cls("explicit", values=tuple(values), tail=tail)

    @classmethod
    def n_power(cls, exponent) -> "KRule":
        return cls("n-power", exponent=Fraction(exponent))

    @classmethod
    def n_ratio(cls, num: int, den: int) -> "KRule":
        return cls("n-ratio", num=num, den=den)

    @classmethod
    def n_log(cls) -> "KRule":
        return cls("n-log")

    @property
    def n_derived(self) -> bool:
        return self.kind.startswith("n-")

    def raw_value_at(self, j: int, n_j: int) -> int:
        if self.kind == "n-power":
            return floor_pow(n_j, self.exponent)
        if self.kind == "n-ratio":
            return n_j * self.num // self.den
        if self.kind == "n-log":
            return floor_ln(n_j)
        if self.kind == "constant":
            return self.value
        if self.kind == "affine":
            return self.a * j + self.b
        if self.kind == "power":
            return self.base ** j
        if j <= len(self.values):
            return self.values[j - 1]
        return self.tail.raw_value_at(j, n_j)

    def value_at(self, j: int, n_j: int) -> int:
        return max(1, self.raw_value_at(j, n_j))

    def eventually_constant(self) -> Optional[tuple[int, int]]:
        """Constancy provable without looking at N_j (plain kinds only)."""
        if self.kind == "constant":
            return (1, self.value)
        if self.kind == "affine":
            return (1, self.b) if self.a == 0 else None
        if self.kind == "explicit":
            ec = self.tail.eventually_constant()
            if ec is None:
                return None
            return (max(len(self.values) + 1, ec[0]), ec[1])
        return None


@dataclass(frozen=True)
class DigitRule:
    """Digit sets per level: ``consecutive`` ({0..K_j-1} via a KRule) or
    ``sets`` (explicit sorted digit tuples; levels beyond the list repeat
    the last set)."""

    kind: str
    k_rule: Optional[KRule] = None
    sets: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        _require(self.kind in ("consecutive", "sets"), "invalid-rule",
                 f"unknown digit rule kind {self.kind!r}")
        if self.kind == "consecutive":
            _require(self.k_rule is not None, "invalid-rule",
                     "consecutive digit rule needs a count rule")
        else:
            _require(len(self.sets) >= 1, "invalid-rule",
                     "sets digit rule needs at least one digit set")
            for i, s in enumerate(self.sets, start=1):
                _require(len(s) >= 1, "invalid-rule", f"digit set #{i} is empty")
                _require(all(d >= 0 for d in s), "invalid-rule",
                         f"digit set #{i} has negative digits")
                _require(tuple(sorted(set(s))) == s, "invalid-rule",
                         f"digit set #{i} must be sorted and duplicate-free")

    @classmethod
    def consecutive(cls, k_rule: KRule) -> "DigitRule":
        return cls("consecutive", k_rule=k_rule)

    @classmethod
    def explicit_sets(cls, sets: Sequence[Sequence[int]]) -> "DigitRule":
        return cls("sets", sets=tuple(tuple(sorted(set(s))) for s in sets))

    def set_at(self, j: int) -> tuple[int, ...]:
        assert self.kind == "sets"
        return self.sets[min(j, len(self.sets)) - 1]


@dataclass(frozen=True)
class LevelData:
    """Validated data for one level."""

    n: int
    k: int
    max_digit: int
    digit_sum: int
    consecutive: bool   # B_j == {0, ..., K_j-1}
    full: bool          # K_j == N_j (degenerate: nothing removed)
    digits: Optional[tuple[int, ...]]  # None when consecutive (implied range)


@dataclass(frozen=True)
class DigitSystem:
    """Immutable digit system with levels materialized up to ``horizon``."""

    n_rule: SequenceRule
    b_rule: DigitRule
    horizon: int
    _levels: list = field(default_factory=list, repr=False, compare=False)
    _prefix: list = field(default_factory=lambda: [1], repr=False, compare=False)

    def __post_init__(self):
        _require(self.horizon >= 1, "invalid-horizon",
                 f"horizon must be >= 1, got {self.horizon}")
        for j in range(1, self.horizon + 1):
            self._levels.append(self._build_level(j))

    def _build_level(self, j: int) -> LevelData:
        n = self.n_rule.value_at(j)
        floor = 3 if self.n_rule.min3 else 2
        _require(n >= floor, "invalid-subdivision",
                 f"N at level {j} is {n}, below the required minimum {floor}")
        if self.b_rule.kind == "consecutive":
            k = self.b_rule.k_rule.value_at(j, n)
            _require(k <= n - 1, "count-exceeds-subdivision",
                     f"count K={k} at level {j} must stay below N={n}")
            return LevelData(n=n, k=k, max_digit=k - 1, digit_sum=k * (k - 1) // 2,
                             consecutive=True, full=False, digits=None)
        digits = self.b_rule.set_at(j)
        _require(digits[-1] <= n - 1, "digit-outside-range",
                 f"digit {digits[-1]} at level {j} exceeds N-1={n - 1}")
        k = len(digits)
        consec = digits == tuple(range(k))
        return LevelData(n=n, k=k, max_digit=digits[-1], digit_sum=sum(digits),
                         consecutive=consec, full=(k == n), digits=digits)

    # -- level access -------------------------------------------------------

    def level_data(self, j: int) -> LevelData:
        """Level record for 1 <= j <= horizon."""
        if not 1 <= j <= self.horizon:
            raise ResourceLimit(
                "level-out-of-horizon",
                f"level {j} outside the materialized range 1..{self.horizon}")
        return self._levels[j - 1]

    def peek_level(self, j: int) -> LevelData:
        """Rule evaluation one step past the horizon (tail diagnostics)."""
        if 1 <= j <= self.horizon:
            return self._levels[j - 1]
        if j == self.horizon + 1:
            return self._build_level(j)
        raise ResourceLimit("level-out-of-horizon",
                            f"level {j} is beyond horizon+1")

    def digits_at(self, j: int) -> tuple[int, ...]:
        ld = self.level_data(j)
        return tuple(range(ld.k)) if ld.digits is None else ld.digits

    def prefix_product(self, n: int) -> int:
        """N_1 * ... * N_n (n = 0 gives 1)."""
        if n < 0 or n > self.horizon:
            raise ResourceLimit("level-out-of-horizon",
                                f"prefix product needs 0 <= n <= {self.horizon}")
        while len(self._prefix) <= n:
            j = len(self._prefix)
            self._prefix.append(self._prefix[-1] * self._levels[j - 1].n)
        return self._prefix[n]

    # -- whole-system facts --------------------------------------------------

    @property
    def min_n(self) -> int:
        """Exact min over *all* levels of N_j (head scan + rule tail minimum)."""
        head = min(ld.n for ld in self._levels)
        return min(head, self.n_rule.min_from(self.horizon + 1))

    @property
    def all_consecutive(self) -> bool:
        return all(ld.consecutive for ld in self._levels)

    @property
    def has_full_levels(self) -> bool:
        return any(ld.full for ld in self._levels)


def get_level(sys: DigitSystem, j: int) -> tuple[int, tuple[int, ...]]:
    """(N_j, sorted digit set) for a level inside the horizon."""
    ld = sys.level_data(j)
    return ld.n, sys.digits_at(j)


# -- supremum of per-level ratios --------------------------------------------

@dataclass(frozen=True)
class SupremumResult:
    """Supremum over all levels of a per-level ratio.

    ``value`` is the maximum over the horizon, attained at level
    ``attained_at``.  ``exact`` means the rules prove the tail never
    exceeds it.  Otherwise ``tail_bound`` is a certified upper bound for
    the remaining levels and ``upper`` = max(value, tail_bound) is the
    sound bound to use in certificates.
    """

    value: Fraction
    attained_at: Optional[int]
    exact: bool
    tail_bound: Optional[Fraction]
    upper: Fraction

    def describe_attained(self) -> str:
        return "supremum-over-tail" if self.attained_at is None else str(self.attained_at)


def _level_numerator(ld: LevelData, mass: bool) -> int:
    return ld.k if mass else ld.max_digit


def _tail_numerator_constant(sys: DigitSystem, mass: bool) -> Optional[tuple[int, int]]:
    """(start level, numerator value) once the numerator stops changing."""
    br = sys.b_rule
    if br.kind == "sets":
        last = br.sets[-1]
        return (len(br.sets), len(last) if mass else last[-1])
    ec = br.k_rule.eventually_constant()
    if ec is None:
        return None
    start, k = ec
    k = max(1, k)
    return (start, k if mass else k - 1)


def _sup_level_ratio(sys: DigitSystem, mass: bool) -> SupremumResult:
    """sup_j numerator_j / N_j with numerator = max(B_j) or K_j (``mass``)."""
    best = Fraction(-1)
    best_at = 1
    for j in range(1, sys.horizon + 1):
        ld = sys.level_data(j)
        r = Fraction(_level_numerator(ld, mass), ld.n)
        if r > best:
            best, best_at = r, j
    h = best

    # Case 1: subdivision and numerator both eventually constant -> the tail
    # ratio is a constant already included in the horizon scan.
    n_ec = sys.n_rule.eventually_constant()
    num_ec = _tail_numerator_constant(sys, mass)
    if n_ec is not None and n_ec[0] <= sys.horizon:
        if sys.b_rule.kind == "sets" or sys.b_rule.k_rule.n_derived:
            if (num_ec is None or num_ec[0] <= sys.horizon):
                # n-derived counts on a constant N are constant too.
                return SupremumResult(h, best_at, True, None, h)
        elif num_ec is not None and num_ec[0] <= sys.horizon:
            return SupremumResult(h, best_at, True, None, h)

    # Case 2: nondecreasing subdivision with a per-kind decreasing envelope.
    if sys.n_rule.nondecreasing():
        n_next = sys.peek_level(sys.horizon + 1).n
        env = _tail_envelope(sys, mass, n_next, h)
        if env is not None:
            tail_le_h, tail_bound = env
            if tail_le_h:
                return SupremumResult(h, best_at, True, None, h)
            return SupremumResult(h, None, False, tail_bound, max(h, tail_bound))

    # Fallback: only the trivial bound (every ratio is < 1, or <= 1 for mass).
    one = Fraction(1)
    return SupremumResult(h, None, False, one, one)


def _tail_envelope(sys: DigitSystem, mass: bool, n_next: int,
                   h: Fraction) -> Optional[tuple[bool, Fraction]]:
    """(tail sup <= h?, rational tail bound) for N nondecreasing past horizon."""
    num_ec = _tail_numerator_constant(sys, mass)
    if num_ec is not None and num_ec[0] <= sys.horizon + 1:
        v = num_ec[1]
        bound = Fraction(v, n_next)
        return (bound <= h, bound)
    if sys.b_rule.kind != "consecutive":
        return None
    kr = sys.b_rule.k_rule
    if kr.kind == "n-power":
        # ratio <= N**(exponent-1), decreasing in N for exponent <= 1
        s1 = kr.exponent - 1
        le = pow_leq(n_next, s1, h)
        if le:
            return (True, h)
        p, q = s1.numerator, s1.denominator
        if q <= 64:
            d = max(1, floor_nth_root(n_next ** (-p), q))
            return (False, Fraction(1, d))
        return (False, Fraction(1))
    if kr.kind == "n-ratio":
        if n_next * kr.num < kr.den:
            return None  # clamping may still fire in the tail
        bound = Fraction(kr.num, kr.den)
        return (bound <= h, bound)
    if kr.kind == "n-log":
        # floor(ln N)/N <= ln(N)/N <= 2/sqrt(N), decreasing
        bound = Fraction(2, max(1, math.isqrt(n_next)))
        return (4 * h.denominator ** 2 <= h.numerator ** 2 * n_next, bound)
    return None


def compute_c(sys: DigitSystem) -> SupremumResult:
    """Bias ratio c = sup_j max(B_j)/N_j, with exactness/tail certification."""
    return _sup_level_ratio(sys, mass=False)


def digit_count_ratio(sys: DigitSystem) -> SupremumResult:
    """sup_j K_j/N_j, the per-level mass-split ratio (used by the
    non-decay certificate, whose product bound runs over K_j rather than
    the largest digit)."""
    return _sup_level_ratio(sys, mass=True)


# -- growth diagnostics -------------------------------------------------------

@dataclass(frozen=True)
class GrowthCheck:
    """Windowed ratios log N_{j+1} / log(N_1...N_j).

    Finite data: the flag only reports whether the observed ratios never
    increase across the window, not any statement about the limit.
    """

    start: int
    end: int
    ratios: tuple[float, ...]
    nonincreasing: bool

    def ratio_at(self, j: int) -> float:
        return self.ratios[j - self.start]


def growth_ratios(n_rule: SequenceRule, start: int, end: int,
                  dps: int = 50) -> tuple[float, ...]:
    """Rule-level growth ratios for start <= j <= end (no digit validation)."""
    _require(1 <= start <= end, "empty-window",
             f"window [{start}, {end}] is empty or starts below 1")
    out = []
    with mpmath.workdps(dps):
        acc = mpmath.mpf(0)
        for j in range(1, end + 1):
            acc += mpmath.log(n_rule.value_at(j))
            if j >= start:
                out.append(float(mpmath.log(n_rule.value_at(j + 1)) / acc))
    return tuple(out)


def check_growth_assumption(sys: DigitSystem, start: int, end: int,
                            dps: int = 50) -> GrowthCheck:
    """Growth-assumption diagnostics over a window inside the horizon."""
    _require(1 <= start <= end <= sys.horizon, "empty-window",
             f"window [{start}, {end}] must sit inside 1..{sys.horizon}")
    sys.peek_level(min(end + 1, sys.horizon + 1))  # validates the lookahead level
    ratios = growth_ratios(sys.n_rule, start, end, dps=dps)
    noninc = all(b <= a for a, b in zip(ratios, ratios[1:]))
    return GrowthCheck(start=start, end=end, ratios=ratios, nonincreasing=noninc)
