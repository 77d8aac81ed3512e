"""Command-line interface: frontier datasets as CSV, verification, scalar helpers.

All quantities are dimensionless.  CSV output is RFC-4180-style with LF
line endings, a header row, and `#` comment lines recording the invocation;
values carry 17 significant digits so files round-trip doubles exactly.
Exit codes: 0 success/verified, 1 verification violation, 2 usage error.
"""

import math
import os
import sys
import tempfile

import click
import numpy as np

from . import inversion, oracle, qstate, tradeoff

CSV_DIGITS = ".17g"     # round-trip exact for IEEE doubles
HUMAN_DIGITS = ".12g"


def _fmt(value: float) -> str:
    return format(float(value), CSV_DIGITS)


def _write_text(output: str, text: str) -> None:
    """Write atomically (temp file + rename), or to stdout for '-'."""
    if output == "-":
        click.echo(text, nl=False)
        return
    directory = os.path.dirname(os.path.abspath(output)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".probfid-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, output)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(invocation: str, header: list[str], rows) -> str:
    lines = [f"# {invocation}", ",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _floats(text: str, flag: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise click.UsageError(f"{flag} expects comma-separated numbers, got {text!r}")
    if not values:
        raise click.UsageError(f"{flag} needs at least one value")
    return values


def _usage_guard(fn, *args, **kwargs):
    """Run a library call, translating validation errors to exit code 2."""
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise click.UsageError(str(exc))


@click.group()
def main():
    """Probability-fidelity tradeoff frontiers for targeted qubit operations.

    All quantities (overlaps, fidelities, probabilities, contraction
    strengths, Bloch components) are dimensionless; ranges are given with
    each option.
    """


@main.command("curve-transform")
@click.option("--s-psi", "s_psi", type=float, required=True,
              help="Input-pair overlap, in [0, 1).")
@click.option("--s-phi", "s_phi_list", required=True,
              help="Comma-separated target-pair overlaps, each in [0, --s-psi].")
@click.option("--points", type=int, default=200, show_default=True,
              help="Samples per curve (>= 2).")
@click.option("--output", default="-", show_default=True,
              help="Output CSV path, or - for stdout.")
def curve_transform(s_psi, s_phi_list, points, output):
    """Frontier curves for pure-pair transformations, one block per target overlap."""
    overlaps = _floats(s_phi_list, "--s-phi")
    rows = []
    for s_phi in overlaps:
        curve = _usage_guard(tradeoff.frontier_curve, s_psi, s_phi, points)
        rows.extend((s_psi, s_phi, pt.p, pt.F) for pt in curve.points)
    invocation = (f"probfid curve-transform --s-psi {s_psi!r} "
                  f"--s-phi {s_phi_list} --points {points}")
    _write_text(output, _csv_text(invocation, ["s_psi", "s_phi", "p", "F"], rows))


@main.command("curve-semiclassical")
@click.option("--beta", "beta_list", required=True,
              help="Comma-separated contraction strengths, each in (0, 1].")
@click.option("--points", type=int, default=200, show_default=True,
              help="Samples per curve (>= 2).")
@click.option("--output", default="-", show_default=True,
              help="Output CSV path, or - for stdout.")
def curve_semiclassical(beta_list, points, output):
    """Inversion frontiers for diagonal inputs, one block per contraction strength."""
    betas = _floats(beta_list, "--beta")
    rows = []
    for beta in betas:
        curve = _usage_guard(inversion.semiclassical_frontier, beta, points)
        rows.extend((beta, pt.p, pt.F) for pt in curve.points)
    invocation = f"probfid curve-semiclassical --beta {beta_list} --points {points}"
    _write_text(output, _csv_text(invocation, ["beta", "p", "F"], rows))


@main.command("curve-quantum-inversion")
@click.option("--beta", type=float, required=True,
              help="Contraction strength, in (0, 1].")
@click.option("--overlap-in", "overlap_in", type=float, required=True,
              help="Overlap of the canonical input pair, in [0, 1).")
@click.option("--points", type=int, default=200, show_default=True,
              help="Samples for the curve (>= 2).")
@click.option("--output", default="-", show_default=True,
              help="Output CSV path, or - for stdout.")
def curve_quantum_inversion(beta, overlap_in, points, output):
    """Inversion frontier for a canonical pure pair squeezed by the contraction."""
    psi = _usage_guard(inversion.contraction_input_pair, overlap_in)
    curve = _usage_guard(inversion.quantum_inversion_frontier, beta, psi, points)
    s_in = curve.meta["s_in"]
    rows = [(beta, s_in, pt.p, pt.F) for pt in curve.points]
    invocation = (f"probfid curve-quantum-inversion --beta {beta!r} "
                  f"--overlap-in {overlap_in!r} --points {points}")
    _write_text(output, _csv_text(invocation, ["beta", "s_in", "p", "F"], rows))


@main.command("fidelity")
@click.option("--bloch", "blochs", multiple=True,
              help="State as Bloch components x,y,z (|r| <= 1); repeatable.")
@click.option("--diag", "diags", multiple=True,
              help="State as diag(x, 1-x) with x in [0, 1]; repeatable.")
def fidelity(blochs, diags):
    """Uhlmann fidelity of two states (order irrelevant; give exactly two)."""
    states = _parse_states(blochs, diags)
    if len(states) != 2:
        raise click.UsageError("fidelity needs exactly two states "
                               "(via --bloch and/or --diag)")
    value = _usage_guard(qstate.uhlmann_fidelity, states[0], states[1])
    click.echo(format(value, HUMAN_DIGITS))


@main.command("probability")
@click.option("--s-in", "s_in", type=float, required=True,
              help="Overlap of the pure input pair, in [0, 1].")
@click.option("--s-out", "s_out", type=float, default=None,
              help="Overlap of the pure target pair, in [0, 1].")
@click.option("--bloch", "blochs", multiple=True,
              help="Mixed target as Bloch components x,y,z; repeatable.")
@click.option("--diag", "diags", multiple=True,
              help="Mixed target as diag(x, 1-x); repeatable.")
def probability(s_in, s_out, blochs, diags):
    """Maximum mean transformation probability (pure or mixed targets)."""
    from . import transform
    states = _parse_states(blochs, diags)
    if s_out is not None and states:
        raise click.UsageError("give either --s-out or two target states, not both")
    if s_out is not None:
        value = _usage_guard(transform.max_probability_pure, s_in, s_out)
    elif len(states) == 2:
        value = _usage_guard(transform.max_probability_mixed, s_in, tuple(states))
    else:
        raise click.UsageError("probability needs --s-out or exactly two target "
                               "states (via --bloch and/or --diag)")
    click.echo(format(value, HUMAN_DIGITS))


def _parse_states(blochs, diags) -> list[np.ndarray]:
    states = []
    for text in blochs:
        comps = _floats(text, "--bloch")
        if len(comps) != 3:
            raise click.UsageError(f"--bloch expects x,y,z, got {text!r}")
        states.append(_usage_guard(qstate.density_from_bloch, comps))
    for text in diags:
        comps = _floats(text, "--diag")
        if len(comps) != 1 or not 0.0 <= comps[0] <= 1.0:
            raise click.UsageError(f"--diag expects a single x in [0, 1], got {text!r}")
        states.append(np.diag([comps[0], 1.0 - comps[0]]).astype(complex))
    return states


@main.command("verify")
@click.argument("suite", type=click.Choice(["transform", "semiclassical",
                                            "quantum", "all"]))
@click.option("--restarts", type=int, default=256, show_default=True,
              help="Random search restarts per grid point.")
@click.option("--iters", type=int, default=500, show_default=True,
              help="Simplex iterations per restart.")
@click.option("--seed", type=int, default=0, show_default=True,
              help="Root seed for the search streams.")
@click.option("--tolerance", type=float, default=1e-6, show_default=True,
              help="Largest admissible frontier violation.")
@click.option("--points", type=int, default=11, show_default=True,
              help="Probe probabilities per curve.")
@click.option("--output", default="-", show_default=True,
              help="Where to write the summary table.")
def verify(suite, restarts, iters, seed, tolerance, points, output):
    """Search for operations beating the analytic frontiers.

    Exits 0 when no probed point violates its frontier by more than the
    tolerance and every constructive seed attains it; exits 1 on a genuine
    finding.
    """
    try:
        cfg = oracle.SearchConfig(restarts=restarts, refine_iters=iters,
                                  seed=seed, tolerance=tolerance)
        if points < 1:
            raise ValueError(f"--points must be positive, got {points!r}")
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rows = []
    if suite in ("transform", "all"):
        for s_psi, s_phi in oracle.default_transform_suite():
            grid = oracle.transform_probe_grid(s_psi, s_phi, points)
            reports = oracle.probe_transform_frontier(s_psi, s_phi, grid, cfg)
            label = f"s_psi={s_psi:g} s_phi={s_phi:g}"
            rows.extend(("transform", label, r) for r in reports)
    if suite in ("semiclassical", "all"):
        for beta in oracle.default_semiclassical_betas():
            grid = oracle.semiclassical_probe_grid(beta, points)
            reports = oracle.probe_inversion_frontier(beta, "semiclassical", grid, cfg)
            rows.extend(("semiclassical", f"beta={beta:g}", r) for r in reports)
    if suite in ("quantum", "all"):
        beta, psi = oracle.default_quantum_case()
        _, s_in = inversion.primed_pair(beta, psi)
        grid = oracle.transform_probe_grid(s_in, psi.overlap, points)
        reports = oracle.probe_inversion_frontier(beta, "quantum", grid, cfg, psi=psi)
        label = f"beta={beta:g} overlap={psi.overlap:g}"
        rows.extend(("quantum", label, r) for r in reports)
    text = _verify_table(rows, tolerance)
    _write_text(output, text)
    worst = max(r.violation for _, _, r in rows)
    shortfall = min(r.violation for _, _, r in rows)
    if worst > tolerance or shortfall < -tolerance:
        sys.exit(1)


def _verify_table(rows, tolerance: float) -> str:
    header = (f"{'suite':<14}{'curve':<24}{'p':>12}{'frontier F':>14}"
              f"{'best F':>14}{'violation':>13}")
    lines = [header, "-" * len(header)]
    for suite, label, rep in rows:
        lines.append(f"{suite:<14}{label:<24}{rep.best_point.p:>12.6f}"
                     f"{rep.frontier_value:>14.9f}{rep.best_point.F:>14.9f}"
                     f"{rep.violation:>13.2e}")
    worst = max(r.violation for _, _, r in rows)
    shortfall = min(r.violation for _, _, r in rows)
    ok = worst <= tolerance and shortfall >= -tolerance
    verdict = "PASS" if ok else "FAIL"
    if not os.environ.get("NO_COLOR") and sys.stdout.isatty():
        verdict = click.style(verdict, fg="green" if ok else "red")
    lines.append(f"max violation: {worst:.3e} (tolerance {tolerance:g}); "
                 f"worst attainability margin: {shortfall:.3e}")
    lines.append(verdict)
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    main()
