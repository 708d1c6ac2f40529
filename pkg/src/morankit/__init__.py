"""Moran-type fractal digit systems on [0,1].

Exact-rational construction geometry, certified evaluation of the Moran
measure's Fourier transform, windowed Hausdorff-dimension estimates,
arithmetic-progression certificates, and a generator for systems with a
prescribed dimension target.
"""

from .dimension import (CollapseCheck, DimensionEstimate,
                        assumption_collapse_check, dimension_estimate)
from .errors import InvalidInput, MorankitError, ResourceLimit
from .generator import GeneratedSystem, generate_for_dimension
from .geometry import (DilationBound, FundamentalInterval, LevelApproximation,
                       RajchmanObstruction, interval_of, level_endpoints,
                       max_dilated_image, rajchman_obstruction)
from .measure import (LevelFactor, NonDecayBound, SpectralSample, factor_value,
                      level_factor, mu_hat, mu_hat_at_scale, mu_hat_bruteforce,
                      nondecay_certificate)
from .progressions import (APProfile, APWitness, ap_length_profile,
                           canonical_ap, find_aps, verify_witness)
from .sequences import (DigitRule, DigitSystem, GrowthCheck, KRule,
                        SequenceRule, SupremumResult, check_growth_assumption,
                        compute_c, digit_count_ratio, get_level, growth_ratios)
from .specfile import dump, dumps, load, loads

__version__ = "0.1.0"

__all__ = [
    "APProfile", "APWitness", "CollapseCheck", "DigitRule", "DigitSystem",
    "DilationBound", "DimensionEstimate", "FundamentalInterval",
    "GeneratedSystem", "GrowthCheck", "InvalidInput", "KRule",
    "LevelApproximation", "LevelFactor", "MorankitError", "NonDecayBound",
    "RajchmanObstruction", "ResourceLimit", "SequenceRule", "SpectralSample",
    "SupremumResult", "ap_length_profile", "assumption_collapse_check",
    "canonical_ap", "check_growth_assumption", "compute_c",
    "digit_count_ratio", "dimension_estimate", "dump", "dumps",
    "factor_value", "find_aps", "generate_for_dimension", "get_level",
    "growth_ratios", "interval_of", "level_endpoints", "level_factor", "load",
    "loads", "max_dilated_image", "mu_hat", "mu_hat_at_scale",
    "mu_hat_bruteforce", "nondecay_certificate", "rajchman_obstruction",
    "verify_witness",
]
