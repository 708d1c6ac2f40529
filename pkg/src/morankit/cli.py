"""Command-line front end.

Subcommands: construct | spectrum | scales | verify | generate |
dimension | ap.  Outputs are pure functions of the spec file and flags
(fixed formatting, fixed ordering), so repeated invocations are
byte-identical.  Exit codes: 0 ok, 2 invalid input, 3 resource cap; every
failure prints one line ``error: <reason>: <detail>`` to stderr.
"""

from __future__ import annotations

import functools
import sys as _sys
from fractions import Fraction

import click

from . import formats, specfile
from .dimension import dimension_estimate
from .errors import InvalidInput, MorankitError, ResourceLimit
from .generator import generate_for_dimension
from .geometry import level_endpoints, rajchman_obstruction
from .measure import mu_hat, mu_hat_at_scale, nondecay_certificate
from .progressions import ap_length_profile, canonical_ap, find_aps
from .sequences import DigitSystem, KRule, SequenceRule


def _fail(err: MorankitError):
    click.echo(f"error: {err.reason}: {err.message}", err=True)
    code = 3 if isinstance(err, ResourceLimit) else 2
    _sys.exit(code)


def handles_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except MorankitError as err:
            _fail(err)
    return wrapper


def _write(out: str, text: str):
    if out == "-":
        click.echo(text, nl=False)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def parse_rule_spec(text: str) -> SequenceRule:
    """Compact subdivision-rule syntax for flags.

    ``constant:5`` | ``affine:a:b`` (a*j+b) | ``power:base`` |
    ``explicit:v1,v2,...:KIND:params`` (tail after the values).
    """
    parts = text.split(":")
    try:
        if parts[0] == "constant" and len(parts) == 2:
            return SequenceRule.constant(int(parts[1]))
        if parts[0] == "affine" and len(parts) == 3:
            return SequenceRule.affine(int(parts[1]), int(parts[2]))
        if parts[0] == "power" and len(parts) == 2:
            return SequenceRule.power(int(parts[1]))
        if parts[0] == "explicit" and len(parts) >= 3:
            values = [int(v) for v in parts[1].split(",")]
            tail = parse_rule_spec(":".join(parts[2:]))
            return SequenceRule.explicit(values, tail)
    except ValueError:
        pass
    raise InvalidInput("invalid-rule-spec",
                       f"cannot parse rule {text!r} (see --help)")


@click.group()
def main():
    """Moran digit systems: exact geometry, certified spectra, dimension
    windows, and progression certificates."""


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--level", type=int, required=True, help="Subdivision level n.")
@click.option("--cap", type=int, default=10_000_000, show_default=True,
              help="Endpoint enumeration cap.")
@click.option("--out", default="-", show_default=True, help="Output CSV path.")
@handles_errors
def construct(specfile_path, level, cap, out):
    """Emit the level-n endpoint table (exact fractions)."""
    system = specfile.load(specfile_path)
    approx = level_endpoints(system, level, cap=cap)
    _write(out, formats.endpoints_csv(approx))


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--xi-min", type=float, required=True)
@click.option("--xi-max", type=float, required=True)
@click.option("--steps", type=int, required=True, help="Grid points (>= 1).")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", default="-", show_default=True)
@handles_errors
def spectrum(specfile_path, xi_min, xi_max, steps, tol, out):
    """Evaluate the transform on a uniform frequency grid."""
    if steps < 1:
        raise InvalidInput("invalid-steps", f"steps must be >= 1, got {steps}")
    system = specfile.load(specfile_path)
    lo, hi = Fraction(xi_min), Fraction(xi_max)
    if steps == 1:
        grid = [lo]
    else:
        step = (hi - lo) / (steps - 1)
        grid = [lo + i * step for i in range(steps)]
    samples = [mu_hat(system, xi, tol=tol) for xi in grid]
    _write(out, formats.spectrum_csv(samples))


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--n-max", type=int, required=True,
              help="Evaluate at N_1...N_n for n = 1..n_max.")
@click.option("--tol", type=float, default=1e-10, show_default=True)
@click.option("--out", default="-", show_default=True)
@handles_errors
def scales(specfile_path, n_max, tol, out):
    """Per-n |muhat(N_1...N_n)| table."""
    system = specfile.load(specfile_path)
    if n_max > system.horizon:
        raise ResourceLimit("level-out-of-horizon",
                            f"n_max {n_max} exceeds horizon {system.horizon}")
    samples = [(n, mu_hat_at_scale(system, n, tol=tol))
               for n in range(1, n_max + 1)]
    _write(out, formats.scales_csv(samples))


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--window-start", type=int, default=0,
              help="Dimension window start (default horizon/2).")
@click.option("--window-end", type=int, default=0,
              help="Dimension window end (default horizon).")
@click.option("--profile-depth", type=int, default=0,
              help="Levels in the progression profile (default horizon).")
@click.option("--out", default="-", show_default=True)
@handles_errors
def verify(specfile_path, window_start, window_end, profile_depth, out):
    """Consolidated certificate report (obstruction, non-decay, dimension
    window, progression profile).  Refusals are reported, not errors."""
    system = specfile.load(specfile_path)
    start = window_start or max(1, system.horizon // 2)
    end = window_end or system.horizon
    sections = [formats.render_system(system),
                formats.render_obstruction(rajchman_obstruction(system))]
    try:
        sections.append(formats.render_nondecay(nondecay_certificate(system)))
    except InvalidInput as err:
        sections.append("certificate non-decay\n  status = not-applicable\n"
                        f"  reason = {err.reason}\n")
    try:
        sections.append(formats.render_dimension(
            dimension_estimate(system, start, end)))
    except InvalidInput as err:
        sections.append("estimate dimension-window\n  status = not-applicable\n"
                        f"  reason = {err.reason}\n")
    sections.append(formats.render_ap_profile(
        ap_length_profile(system, profile_depth or system.horizon)))
    _write(out, "\n".join(sections))


@main.command()
@click.option("--s", "target", required=True,
              help="Dimension target in [0, 1] (decimal or p/q).")
@click.option("--n-rule", default="affine:1:2", show_default=True,
              help="Subdivision rule (see parse syntax in --help).")
@click.option("--horizon", type=int, default=10000, show_default=True)
@click.option("--out", "out_spec", required=True,
              help="Path for the generated spec file.")
@click.option("--report", default="-", show_default=True,
              help="Report output path.")
@handles_errors
def generate(target, n_rule, horizon, out_spec, report):
    """Generate a certified system for a dimension target and write its
    spec file."""
    try:
        frac = Fraction(target)
    except (ValueError, ZeroDivisionError):
        raise InvalidInput("target-out-of-range",
                           f"cannot parse dimension target {target!r}") from None
    rule = parse_rule_spec(n_rule)
    gen = generate_for_dimension(frac, rule, horizon)
    with open(out_spec, "w", encoding="utf-8") as handle:
        handle.write(gen.spec_text)
    sections = [f"generated dimension-target = {formats.fmt_fraction(gen.target)}\n"
                f"spec-file = {out_spec}\n"]
    for note in gen.notes:
        sections.append(f"note = {note}\n")
    sections += [formats.render_obstruction(gen.obstruction),
                 formats.render_dimension(gen.dimension),
                 formats.render_ap_profile(gen.ap_profile)]
    _write(report, "\n".join(sections))


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--window-start", type=int, default=0,
              help="Window start (default horizon/2).")
@click.option("--window-end", type=int, default=0,
              help="Window end (default horizon).")
@click.option("--out", default="-", show_default=True)
@handles_errors
def dimension(specfile_path, window_start, window_end, out):
    """Per-level s1/s2/growth table over a window."""
    system = specfile.load(specfile_path)
    start = window_start or max(1, system.horizon // 2)
    end = window_end or system.horizon
    est = dimension_estimate(system, start, end)
    _write(out, formats.dimension_csv(est))


@main.command()
@click.argument("specfile_path", metavar="SPECFILE")
@click.option("--canonical", type=int, default=0,
              help="Emit the canonical witness at this level.")
@click.option("--find-level", type=int, default=0,
              help="Search the endpoint set of this level exhaustively.")
@click.option("--min-length", type=int, default=3, show_default=True)
@click.option("--max-results", type=int, default=1000, show_default=True)
@click.option("--profile-depth", type=int, default=0,
              help="Rows in the profile table (default: no table unless no "
              "other action is requested, then min(horizon, 32)).")
@click.option("--out", default="-", show_default=True)
@handles_errors
def ap(specfile_path, canonical, find_level, min_length, max_results,
       profile_depth, out):
    """Arithmetic-progression certificates: canonical witnesses,
    exhaustive search, and the per-level length profile."""
    system = specfile.load(specfile_path)
    sections = []
    if canonical:
        sections.append(formats.render_witness(canonical_ap(system, canonical)))
    if find_level:
        approx = level_endpoints(system, find_level)
        witnesses = find_aps(approx, min_length=min_length,
                             max_results=max_results)
        sections.append(formats.witnesses_csv(witnesses))
    if profile_depth or not sections:
        depth = profile_depth or min(system.horizon, 32)
        sections.append(formats.ap_profile_csv(
            ap_length_profile(system, depth)))
    _write(out, "\n".join(sections))


if __name__ == "__main__":
    main()
