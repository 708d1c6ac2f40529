"""Exact-rational geometry of the Moran construction.

Level-n geometry lives on the grid with mesh 1/(N_1...N_n): fundamental
intervals, the sorted left-endpoint set approximating the fractal from
outside, and the dilated images (N_1...N_k) * E whose uniform localization
inside a proper subinterval of the circle is what forces Fourier dimension
zero (a Rajchman-style obstruction).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InvalidInput, ResourceLimit
from .sequences import DigitSystem, SupremumResult, compute_c

DEFAULT_ENUMERATION_CAP = 10_000_000


@dataclass(frozen=True)
class FundamentalInterval:
    """Level-n interval addressed by one digit string."""

    left: Fraction
    length: Fraction
    level: int
    digits: tuple[int, ...]

    @property
    def right(self) -> Fraction:
        return self.left + self.length


@dataclass(frozen=True)
class LevelApproximation:
    """Sorted left endpoints of all level-n intervals (mesh 1/(N_1..N_n)).

    The fractal is covered by the union of [e, e + mesh] over the
    endpoints; the endpoints themselves are points of the fractal whenever
    every later digit set contains 0.
    """

    level: int
    endpoints: tuple[Fraction, ...]
    mesh: Fraction


@dataclass(frozen=True)
class DilationBound:
    """max((N_1...N_k) * E) as partial sum + certified tail bound."""

    k: int
    partial: Fraction
    tail: Fraction
    exact: bool

    @property
    def upper(self) -> Fraction:
        return self.partial + self.tail


@dataclass(frozen=True)
class RajchmanObstruction:
    """Obstruction certificate: every dilate (N_1...N_k) * E lies in
    [0, bound] with bound = factor * c and factor = m/(m-1) for
    m = min_j N_j.  When bound < 1 the closure of the union of dilates
    misses part of the circle, the set is a set of uniqueness, and no
    measure it supports has a decaying transform: Fourier dimension zero.
    A bound >= 1 yields a refusal, not a conclusion."""

    status: str                 # "certified" | "refused"
    c: SupremumResult
    min_n: int
    factor: Fraction
    bound: Fraction

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    @property
    def conclusion(self) -> str:
        if self.certified:
            return ("fourier-dimension-zero: all dilates stay inside "
                    f"[0, {self.bound}], a proper subset of the circle")
        return (f"no-conclusion: obstruction bound {self.bound} reaches 1; "
                "the dilates may fill the circle")


def interval_of(sys: DigitSystem, digits: Sequence[int]) -> FundamentalInterval:
    """Fundamental interval for a digit string (b_1, ..., b_n)."""
    digits = tuple(digits)
    if not digits:
        raise InvalidInput("invalid-digits", "digit string must be nonempty")
    if len(digits) > sys.horizon:
        raise ResourceLimit("level-out-of-horizon",
                            f"digit string longer than horizon {sys.horizon}")
    num = 0
    for j, b in enumerate(digits, start=1):
        level = sys.digits_at(j)
        if b not in level:
            raise InvalidInput("digit-outside-set",
                               f"digit {b} at level {j} not in {level}")
        num = num * sys.level_data(j).n + b
    denom = sys.prefix_product(len(digits))
    return FundamentalInterval(left=Fraction(num, denom),
                               length=Fraction(1, denom),
                               level=len(digits), digits=digits)


def level_endpoints(sys: DigitSystem, n: int,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> LevelApproximation:
    """All level-n left endpoints, sorted, duplicate-free, exact."""
    if not 1 <= n <= sys.horizon:
        raise ResourceLimit("level-out-of-horizon",
                            f"level {n} outside 1..{sys.horizon}")
    count = 1
    for j in range(1, n + 1):
        count *= sys.level_data(j).k
        if count > cap:
            raise ResourceLimit(
                "enumeration-cap",
                f"level {n} holds more than {cap} endpoints")
    # Integer numerators over the common denominator N_1...N_n.  Appending
    # digits in ascending order keeps the list strictly increasing, so the
    # result is sorted without a separate pass.
    nums = [0]
    for j in range(1, n + 1):
        n_j = sys.level_data(j).n
        digits = sys.digits_at(j)
        nums = [x * n_j + b for x in nums for b in digits]
    denom = sys.prefix_product(n)
    endpoints = tuple(Fraction(x, denom) for x in nums)
    return LevelApproximation(level=n, endpoints=endpoints,
                              mesh=Fraction(1, denom))


def max_dilated_image(sys: DigitSystem, k: int) -> DilationBound:
    """max of the dilate (N_1...N_k) * E, i.e. the digit-tail series
    sum_j max(B_{k+j}) / (N_{k+1}...N_{k+j}).

    Constant-tail systems get the exact geometric value; otherwise the
    horizon partial sum plus the certified geometric tail bound
    c * m^(1-J) / (m-1), J = horizon - k, m = min_j N_j.
    """
    if not 0 <= k <= sys.horizon:
        raise InvalidInput("invalid-level", f"k must lie in 0..{sys.horizon}")
    cres = compute_c(sys)
    m = sys.min_n

    n_ec = sys.n_rule.eventually_constant()
    if (n_ec is not None and n_ec[0] <= k + 1 and cres.exact
            and _constant_digit_tail_from(sys, k + 1)):
        ld = sys.level_data(k + 1) if k < sys.horizon else sys.peek_level(k + 1)
        value = Fraction(ld.max_digit, ld.n - 1)  # geometric series v * sum N^-j
        return DilationBound(k=k, partial=value, tail=Fraction(0), exact=True)

    partial = Fraction(0)
    denom = 1
    for j in range(k + 1, sys.horizon + 1):
        ld = sys.level_data(j)
        denom *= ld.n
        partial += Fraction(ld.max_digit, denom)
    big_j = sys.horizon - k
    tail = cres.upper * Fraction(m, m - 1) * Fraction(1, m ** big_j)
    return DilationBound(k=k, partial=partial, tail=tail, exact=False)


def _constant_digit_tail_from(sys: DigitSystem, start: int) -> bool:
    """True when every level >= start provably repeats one (N, B) pair."""
    br = sys.b_rule
    if br.kind == "sets":
        return len(br.sets) <= start
    ec = br.k_rule.eventually_constant()
    if ec is not None:
        return ec[0] <= start
    # n-derived counts are constant wherever N is; the caller already
    # checked the subdivision rule.
    return br.k_rule.n_derived


def rajchman_obstruction(sys: DigitSystem) -> RajchmanObstruction:
    """Obstruction certificate or refusal (a value, never an error)."""
    cres = compute_c(sys)
    m = sys.min_n
    factor = Fraction(m, m - 1)
    bound = factor * cres.upper
    status = "certified" if bound < 1 else "refused"
    return RajchmanObstruction(status=status, c=cres, min_n=m,
                               factor=factor, bound=bound)
