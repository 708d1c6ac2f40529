"""Deterministic text output: CSV tables and certificate reports.

Floats are printed with 15 significant digits, rationals exactly as
``p/q``; identical inputs therefore produce byte-identical output, which
the CLI tests rely on (golden files).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .dimension import DimensionEstimate
from .geometry import LevelApproximation, RajchmanObstruction
from .measure import NonDecayBound, SpectralSample
from .progressions import APProfile, APWitness
from .sequences import DigitSystem, GrowthCheck, SupremumResult


def fmt_float(x: float) -> str:
    if x == 0:
        x = 0.0  # normalize -0.0
    return f"{x:.15g}"


def fmt_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def csv_lines(header: Iterable[str], rows: Iterable[Iterable[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def endpoints_csv(approx: LevelApproximation) -> str:
    rows = ((str(i), fmt_fraction(e), fmt_fraction(approx.mesh))
            for i, e in enumerate(approx.endpoints))
    return csv_lines(("index", "endpoint", "mesh"), rows)


def spectrum_row(sample: SpectralSample) -> tuple[str, ...]:
    xi = str(sample.xi) if isinstance(sample.xi, int) else fmt_float(sample.xi)
    return (xi,
            fmt_float(sample.value.real),
            fmt_float(sample.value.imag),
            fmt_float(abs(sample.value)),
            fmt_float(sample.error_bound),
            str(sample.levels_used))

SPECTRUM_HEADER = ("xi", "re", "im", "modulus", "error_bound", "levels_used")


def spectrum_csv(samples: Iterable[SpectralSample]) -> str:
    return csv_lines(SPECTRUM_HEADER, (spectrum_row(s) for s in samples))


SCALES_HEADER = ("n",) + SPECTRUM_HEADER


def scales_csv(samples: Iterable[tuple[int, SpectralSample]]) -> str:
    rows = ((str(n),) + spectrum_row(s) for n, s in samples)
    return csv_lines(SCALES_HEADER, rows)


def dimension_csv(est: DimensionEstimate) -> str:
    rows = []
    for idx, j in enumerate(range(est.start, est.end + 1)):
        rows.append((str(j),
                     fmt_float(est.s1_values[idx]),
                     fmt_float(est.s2_values[idx]),
                     fmt_float(est.assumption.ratios[idx])))
    return csv_lines(("j", "s1", "s2", "growth_ratio"), rows)


def ap_profile_csv(profile: APProfile) -> str:
    rows = ((str(r.level), str(r.k), fmt_fraction(r.ratio))
            for r in profile.rows)
    return csv_lines(("j", "k", "k_over_n"), rows)


def witnesses_csv(witnesses: Iterable[APWitness]) -> str:
    rows = ((fmt_fraction(w.start), fmt_fraction(w.gap), str(w.length),
             str(w.level), w.kind) for w in witnesses)
    return csv_lines(("start", "gap", "length", "level", "kind"), rows)


def _sup_lines(label: str, sup: SupremumResult) -> list[str]:
    lines = [f"{label} = {fmt_fraction(sup.value)}",
             f"{label}.attained-at = {sup.describe_attained()}",
             f"{label}.exact = {'true' if sup.exact else 'false'}"]
    if sup.tail_bound is not None:
        lines.append(f"{label}.tail-bound = {fmt_fraction(sup.tail_bound)}")
    if sup.upper != sup.value:
        lines.append(f"{label}.upper = {fmt_fraction(sup.upper)}")
    return lines


def render_obstruction(cert: RajchmanObstruction) -> str:
    lines = ["certificate dilation-obstruction",
             f"  status = {cert.status}"]
    lines += ["  " + line for line in _sup_lines("c", cert.c)]
    lines += [f"  min-n = {cert.min_n}",
              f"  factor = {fmt_fraction(cert.factor)}",
              f"  bound = {fmt_fraction(cert.bound)}",
              f"  conclusion = {cert.conclusion}"]
    return "\n".join(lines) + "\n"


def render_nondecay(cert: NonDecayBound) -> str:
    lines = ["certificate non-decay",
             f"  status = {cert.status}"]
    lines += ["  " + line for line in _sup_lines("count-ratio", cert.c)]
    lines.append("  threshold = sqrt(6)/pi ~ 0.779696801233676")
    if cert.applicable:
        lines += [f"  c0 = {fmt_float(cert.c0)}",
                  f"  c0.error <= {fmt_float(cert.c0_error)}",
                  f"  c0.product-levels = {cert.product_levels}",
                  f"  lower-bound = {fmt_float(cert.lower_bound)}",
                  "  conclusion = |muhat| stays above lower-bound at every "
                  "scale frequency N_1...N_n"]
    else:
        lines.append("  conclusion = no-conclusion (count ratio at or above "
                     "the threshold)")
    return "\n".join(lines) + "\n"


def render_witness(w: APWitness) -> str:
    lines = ["witness arithmetic-progression",
             f"  kind = {w.kind}",
             f"  start = {fmt_fraction(w.start)}",
             f"  gap = {fmt_fraction(w.gap)}",
             f"  length = {w.length}",
             f"  level = {w.level}"]
    if w.zero_tail_level is not None:
        lines.append(f"  zero-tail-checked-to = {w.zero_tail_level}")
    return "\n".join(lines) + "\n"


def render_dimension(est: DimensionEstimate) -> str:
    lines = ["estimate dimension-window",
             f"  window = {est.start}..{est.end}",
             f"  classification = {est.classification}",
             f"  s1-inf = {fmt_float(est.s1_inf)}",
             f"  s2-inf = {fmt_float(est.s2_inf)}"]
    if est.dimension_known:
        lines.append("  dimension = s2-inf (packed construction; windowed "
                     "value, no limit claim)")
    else:
        lines.append("  dimension = between s2-inf and s1-inf (sandwich)")
    lines.append(f"  growth-ratio-last = {fmt_float(est.assumption.ratios[-1])}")
    lines.append("  growth-nonincreasing = "
                 + ("true" if est.assumption.nonincreasing else "false"))
    return "\n".join(lines) + "\n"


def render_ap_profile(profile: APProfile) -> str:
    first, last = profile.rows[0], profile.rows[-1]
    lines = ["profile canonical-progressions",
             f"  levels = 1..{last.level}",
             f"  length-first = {first.k}",
             f"  length-last = {last.k}",
             "  lengths-grow = " + ("true" if profile.lengths_grow else "false"),
             "  ratio-below-half = "
             + ("true" if profile.ratio_below_half else "false")]
    return "\n".join(lines) + "\n"


def render_system(sys: DigitSystem) -> str:
    lines = ["system",
             f"  horizon = {sys.horizon}",
             f"  min-n = {sys.min_n}",
             f"  consecutive = {'true' if sys.all_consecutive else 'false'}",
             f"  degenerate-full-levels = "
             + ("true" if sys.has_full_levels else "false")]
    return "\n".join(lines) + "\n"
