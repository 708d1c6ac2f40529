"""Digit systems with a prescribed Hausdorff-dimension target.

For a target s and a strictly increasing subdivision rule starting at
N_1 >= 3, consecutive digit counts are chosen per case:

    0 < s < 1 :  K_j = floor(N_j ** s)
    s = 1     :  K_j = floor(N_j / 3)
    s = 0     :  K_j = floor(ln N_j)

so the windowed s2 values track s while the bias stays small enough for
the dilation obstruction (Fourier dimension zero) and the canonical
progression lengths K_j grow without bound.  The construction is returned
with its three certificates attached; if the obstruction cannot be
certified the generation fails rather than emitting an unsupported claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dimension import DimensionEstimate, dimension_estimate
from .errors import InvalidInput
from .geometry import RajchmanObstruction, rajchman_obstruction
from .progressions import APProfile, ap_length_profile
from .sequences import DigitRule, DigitSystem, KRule, SequenceRule
from . import specfile

_MIN_HORIZON = 8


@dataclass(frozen=True)
class GeneratedSystem:
    """A generated digit system bundled with its certificates."""

    target: Fraction
    system: DigitSystem
    obstruction: RajchmanObstruction
    dimension: DimensionEstimate
    ap_profile: APProfile
    notes: tuple[str, ...]
    spec_text: str


def _count_rule_for(target: Fraction) -> tuple[KRule, list[str]]:
    if target == 0:
        # floor(ln N) keeps the counts unbounded while log K/log N -> 0.
        return KRule.n_log(), [
            "target 0 uses counts K = floor(ln N): the counts still grow "
            "without bound while log(K)/log(N) decays to 0"]
    if target == 1:
        return KRule.n_ratio(1, 3), []
    return KRule.n_power(target), []


def generate_for_dimension(s, n_rule: SequenceRule, horizon: int,
                           window: tuple[int, int] | None = None,
                           dps: int = 50) -> GeneratedSystem:
    """Build and certify a system whose windowed s2 values target s."""
    target = Fraction(s)
    if not 0 <= target <= 1:
        raise InvalidInput("target-out-of-range",
                           f"dimension target {s} must lie in [0, 1]")
    if not n_rule.strictly_increasing():
        raise InvalidInput("rule-not-increasing",
                           "the subdivision rule must be strictly increasing")
    if n_rule.value_at(1) < 3:
        raise InvalidInput("subdivision-below-3",
                           f"N_1 = {n_rule.value_at(1)}, need N_1 >= 3")
    if horizon < _MIN_HORIZON:
        raise InvalidInput("horizon-too-small",
                           f"horizon {horizon} is too small to certify "
                           f"anything useful (need >= {_MIN_HORIZON})")

    k_rule, notes = _count_rule_for(target)
    system = DigitSystem(n_rule=n_rule, b_rule=DigitRule.consecutive(k_rule),
                         horizon=horizon)

    # The construction's own hypothesis: bias below 1/2 at every level
    # (below 1/3 + level slack for target 1, where counts are N/3).
    half = Fraction(1, 2)
    for j in range(1, horizon + 1):
        ld = system.level_data(j)
        if Fraction(ld.max_digit, ld.n) >= half:
            raise InvalidInput(
                "bias-exceeds-half",
                f"floor(N**{target}) pushes the bias ratio to "
                f"{Fraction(ld.max_digit, ld.n)} at level {j}; start the "
                "subdivision rule higher for a target this close to 1")

    obstruction = rajchman_obstruction(system)
    if not obstruction.certified:
        raise InvalidInput(
            "obstruction-not-certified",
            f"dilation bound {obstruction.bound} reaches 1 (horizon too "
            "small for the tail bound, or the rule grows too slowly)")

    if window is None:
        window = (max(1, horizon // 2), horizon)
    estimate = dimension_estimate(system, window[0], window[1], dps=dps)
    profile = ap_length_profile(system, horizon)

    return GeneratedSystem(target=target, system=system,
                           obstruction=obstruction, dimension=estimate,
                           ap_profile=profile, notes=tuple(notes),
                           spec_text=specfile.dumps(system))
