"""Windowed Hausdorff-dimension estimates for Moran digit systems.

Two per-level ratios are tracked:

    s1(j) = log(K_1...K_j) / log(N_1...N_j)
    s2(j) = log(K_1...K_j) / (log(N_1...N_j) + log(N_{j+1}/K_{j+1}))

For digit sets packed to the left (consecutive), the Hausdorff dimension
equals the liminf of s2; in general it is sandwiched between the liminfs
of s2 and s1.  The package never claims the liminf itself: it reports the
infimum over a user-chosen window together with per-level values and
growth diagnostics so convergence can be judged.

Logs are evaluated with mpmath at a configurable precision (default 50
significant digits) because the ratios involve logs of very large level
products.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import mpmath

from .errors import InvalidInput
from .sequences import DigitSystem, GrowthCheck, check_growth_assumption

Classification = Literal["homogeneous", "partial-homogeneous", "general"]


@dataclass(frozen=True)
class DimensionEstimate:
    """Windowed s1/s2 values with convergence diagnostics.

    ``classification`` is derived from the digit rule alone: consecutive
    digit sets give a packed-to-the-left construction where the dimension
    equals liminf s2; anything else only gets the two-sided sandwich.
    """

    start: int
    end: int
    s1_values: tuple[float, ...]
    s2_values: tuple[float, ...]
    s1_inf: float
    s2_inf: float
    classification: Classification
    assumption: GrowthCheck

    def s1_at(self, j: int) -> float:
        return self.s1_values[j - self.start]

    def s2_at(self, j: int) -> float:
        return self.s2_values[j - self.start]

    @property
    def dimension_known(self) -> bool:
        return self.classification == "partial-homogeneous"


@dataclass(frozen=True)
class CollapseCheck:
    """Largest s1 - s2 gap over a window and whether it shrinks across it."""

    start: int
    end: int
    max_gap: float
    first_gap: float
    last_gap: float

    @property
    def trending_to_zero(self) -> bool:
        return self.end > self.start and self.last_gap < self.first_gap


def _ratio_arrays(sys: DigitSystem, start: int, end: int,
                  dps: int) -> tuple[list[float], list[float]]:
    s1, s2 = [], []
    with mpmath.workdps(dps):
        log_k = mpmath.mpf(0)
        log_n = mpmath.mpf(0)
        log_cache: dict[int, mpmath.mpf] = {}

        def logi(v: int) -> mpmath.mpf:
            got = log_cache.get(v)
            if got is None:
                got = log_cache[v] = mpmath.log(v)
            return got

        for j in range(1, end + 1):
            ld = sys.level_data(j)
            log_k += logi(ld.k)
            log_n += logi(ld.n)
            if j >= start:
                nxt = sys.peek_level(j + 1)
                s1.append(float(log_k / log_n))
                s2.append(float(log_k / (log_n + logi(nxt.n) - logi(nxt.k))))
    return s1, s2


def dimension_estimate(sys: DigitSystem, start: int, end: int,
                       dps: int = 50) -> DimensionEstimate:
    """Per-level s1/s2 over [start, end] plus window infima.

    s2 at level j looks one level ahead, so the rule is evaluated at
    end+1 (one step past the horizon is allowed).  Degenerate systems
    where some level keeps every digit (K_j = N_j) are rejected: the
    subdivision removes nothing there and the ratio formulas lose meaning.
    """
    if not 1 <= start <= end <= sys.horizon:
        raise InvalidInput("empty-window",
                           f"window [{start}, {end}] must sit inside "
                           f"1..{sys.horizon}")
    for j in range(1, end + 2):
        ld = sys.peek_level(j)
        if ld.full:
            raise InvalidInput(
                "degenerate-full-level",
                f"level {j} keeps all {ld.n} digits; dimension ratios need "
                "K < N")
    s1, s2 = _ratio_arrays(sys, start, end, dps)
    growth = check_growth_assumption(sys, start, min(end, sys.horizon), dps=dps)
    cls: Classification = "partial-homogeneous" if sys.all_consecutive else "general"
    return DimensionEstimate(start=start, end=end,
                             s1_values=tuple(s1), s2_values=tuple(s2),
                             s1_inf=min(s1), s2_inf=min(s2),
                             classification=cls, assumption=growth)


def assumption_collapse_check(sys: DigitSystem, start: int, end: int,
                              dps: int = 50) -> CollapseCheck:
    """Gap diagnostics: does s1 - s2 shrink as the growth ratios do?"""
    est = dimension_estimate(sys, start, end, dps=dps)
    gaps = [a - b for a, b in zip(est.s1_values, est.s2_values)]
    return CollapseCheck(start=start, end=end, max_gap=max(gaps),
                         first_gap=gaps[0], last_gap=gaps[-1])
