"""Arithmetic progressions inside the fractal, certified exactly.

Two sources: the canonical family {m/(N_1...N_j) : 0 <= m < K_j} that a
consecutive level embeds directly (each term has an explicit digit
expansion with an all-zero tail), and exhaustive search over a level
approximation's endpoint set.  No floating comparisons anywhere here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InvalidInput
from .geometry import LevelApproximation, level_endpoints
from .sequences import DigitSystem


@dataclass(frozen=True)
class APWitness:
    """An arithmetic progression with exact terms and its certification.

    ``canonical`` witnesses carry digit expansions: term m*gap has digit m
    at the witness level and zeros elsewhere, so the terms are genuine
    points of the fractal (checked for levels up to ``zero_tail_level``).
    ``discovered`` witnesses certify membership in the level-``level``
    endpoint set; whether those endpoints lie in the fractal itself
    depends on the digit sets beyond that level.
    """

    start: Fraction
    gap: Fraction
    length: int
    level: int
    kind: str                      # "canonical" | "discovered"
    zero_tail_level: Optional[int] = None

    def terms(self) -> tuple[Fraction, ...]:
        return tuple(self.start + m * self.gap for m in range(self.length))


@dataclass(frozen=True)
class APProfileRow:
    level: int
    k: int
    ratio: Fraction  # K_j / N_j


@dataclass(frozen=True)
class APProfile:
    """Per-level canonical progression lengths with the two growth flags.

    Finite-window diagnostics: ``lengths_grow`` reports that the counts
    reach their maximum at the window end and actually increased;
    ``ratio_below_half`` that K_j/N_j < 1/2 held at every inspected level.
    """

    rows: tuple[APProfileRow, ...]
    lengths_grow: bool
    ratio_below_half: bool


def canonical_ap(sys: DigitSystem, j: int) -> APWitness:
    """The progression {0, g, ..., (K_j-1)*g}, g = 1/(N_1...N_j).

    Needs B_j = {0, ..., K_j-1} and 0 in every digit set up to the
    horizon (the all-zero tail makes each term a point of the fractal).
    """
    ld = sys.level_data(j)
    if not ld.consecutive:
        raise InvalidInput("digit-rule-not-consecutive",
                           f"level {j} digits {sys.digits_at(j)} are not "
                           "{0..K-1}")
    for i in range(1, sys.horizon + 1):
        if sys.digits_at(i)[0] != 0:
            raise InvalidInput("zero-digit-missing",
                               f"level {i} digit set omits 0; canonical "
                               "terms need all-zero tails")
    gap = Fraction(1, sys.prefix_product(j))
    return APWitness(start=Fraction(0), gap=gap, length=ld.k, level=j,
                     kind="canonical", zero_tail_level=sys.horizon)


def find_aps(approx: LevelApproximation, min_length: int = 3,
             max_results: int = 1000) -> list[APWitness]:
    """Maximal arithmetic progressions in the endpoint set, exactly.

    Pair-extension search: every ordered pair proposes a start and gap,
    kept only when the previous term is absent (so each progression is
    reported once, at its maximal extent) and the forward extension
    reaches ``min_length`` terms.  Results arrive sorted by (start, gap)
    and are truncated at ``max_results``.
    """
    if min_length < 3:
        raise InvalidInput("invalid-length", "min_length must be >= 3")
    points = approx.endpoints
    members = set(points)
    found: list[APWitness] = []
    for i, x in enumerate(points):
        for y in points[i + 1:]:
            gap = y - x
            if x - gap in members:
                continue
            length = 2
            z = y + gap
            while z in members:
                length += 1
                z += gap
            if length >= min_length:
                found.append(APWitness(start=x, gap=gap, length=length,
                                       level=approx.level, kind="discovered"))
                if len(found) >= max_results:
                    return found
    return found


def ap_length_profile(sys: DigitSystem, up_to_level: int) -> APProfile:
    """Table (j, K_j, K_j/N_j) for j <= up_to_level, plus growth flags."""
    rows = []
    for j in range(1, up_to_level + 1):
        ld = sys.level_data(j)
        rows.append(APProfileRow(level=j, k=ld.k, ratio=Fraction(ld.k, ld.n)))
    ks = [r.k for r in rows]
    grow = max(ks) > min(ks) and ks[-1] == max(ks)
    below = all(r.ratio < Fraction(1, 2) for r in rows)
    return APProfile(rows=tuple(rows), lengths_grow=grow,
                     ratio_below_half=below)


def verify_witness(sys: DigitSystem, witness: APWitness,
                   approx: Optional[LevelApproximation] = None) -> bool:
    """Independent re-check of a witness, in exact arithmetic.

    Canonical: every term's digit expansion is admissible and later digit
    sets contain 0.  Discovered: every term is a member of the level
    approximation (recomputed unless one is supplied).
    """
    terms = witness.terms()
    if any(t < 0 or t > 1 for t in terms):
        return False
    if witness.kind == "canonical":
        gap = Fraction(1, sys.prefix_product(witness.level))
        if witness.start != 0 or witness.gap != gap:
            return False
        digits = sys.digits_at(witness.level)
        if any(m not in digits for m in range(witness.length)):
            return False
        return all(sys.digits_at(i)[0] == 0
                   for i in range(1, sys.horizon + 1))
    if approx is None:
        approx = level_endpoints(sys, witness.level)
    members = set(approx.endpoints)
    return all(t in members for t in terms)
