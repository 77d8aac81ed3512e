"""Acceptance suite: each test enforces one release criterion at its stated
tolerance and prints one pass/fail line (run with `pytest -s` to see them).
"""

import math
import time

import numpy as np
import pytest
from click.testing import CliRunner

from helpers import ordered_random_pairs, random_density
from probfid import inversion, oracle, qstate, tradeoff, transform
from probfid.cli import main as cli_main
from probfid.oracle import (
    SearchConfig,
    default_quantum_case,
    default_semiclassical_betas,
    default_transform_suite,
    probe_inversion_frontier,
    probe_transform_frontier,
    semiclassical_probe_grid,
    transform_probe_grid,
)

FIGURE_CURVES = {
    0.6: [round(0.1 * k, 1) for k in range(7)],
    0.9: [round(0.1 * k, 1) for k in range(10)],
    0.99: [round(0.09 + 0.1 * k, 2) for k in range(10)],
}


def _report(num: int, name: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num} [{name}]: {status}  {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def test_criterion_1_fidelity_oracle_equivalence():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(10_000):
        a, b = random_density(rng), random_density(rng)
        general = qstate.uhlmann_fidelity(a, b)
        closed = qstate.bloch_fidelity(qstate.bloch_from_density(a),
                                       qstate.bloch_from_density(b))
        worst = max(worst, abs(general - closed))
    elapsed = time.perf_counter() - t0
    _report(1, "fidelity oracle equivalence",
            worst < 1e-9 and elapsed < 5.0,
            f"max |general - closed| = {worst:.3e} in {elapsed:.2f}s")


def test_criterion_2_constructive_matches_analytic():
    rng = np.random.default_rng(2)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1_000):
        psi, phi = ordered_random_pairs(rng)
        constructive = transform.max_feasible_probability_constructive(psi, phi)
        analytic = transform.max_probability_pure(psi.overlap, phi.overlap)
        worst = max(worst, abs(constructive - analytic))
    elapsed = time.perf_counter() - t0
    _report(2, "constructive = analytic maximum probability",
            worst < 1e-8 and elapsed < 30.0,
            f"max deviation = {worst:.3e} over 1000 pairs in {elapsed:.2f}s")


def test_criterion_3_frontier_curve_reproduction():
    t0 = time.perf_counter()
    endpoint_err = 0.0
    sweep_err = 0.0
    monotone = True
    for s_psi, s_phis in FIGURE_CURVES.items():
        for s_phi in s_phis:
            curve = tradeoff.frontier_curve(s_psi, s_phi, 200)
            p0, f0 = tradeoff.anchor_points(s_psi, s_phi)
            first, last = curve.points[0], curve.points[-1]
            endpoint_err = max(endpoint_err, abs(first.p - p0), abs(first.F - 1.0),
                               abs(last.p - 1.0), abs(last.F - f0))
            fs = [pt.F for pt in curve.points]
            if len(fs) > 1:
                monotone &= all(b < a for a, b in zip(fs, fs[1:]))
            targets = transform.symmetric_pair(s_phi)
            for f in np.linspace(f0, 1.0, 22)[1:-1]:
                xi = tradeoff.tilted_pair(targets, float(f))
                p = transform.max_probability_pure(s_psi, xi.overlap)
                sweep_err = max(sweep_err, abs(
                    tradeoff.tradeoff_fidelity(p, s_psi, s_phi) - float(f)))
    elapsed = time.perf_counter() - t0
    _report(3, "frontier curve reproduction",
            endpoint_err <= 1e-12 and monotone and sweep_err <= 1e-9
            and elapsed < 10.0,
            f"endpoints {endpoint_err:.2e}, sweep {sweep_err:.2e}, "
            f"monotone {monotone}, {elapsed:.2f}s")


def test_criterion_4_semiclassical_frontier():
    t0 = time.perf_counter()
    endpoint_err_1 = 0.0
    endpoint_err_r = 0.0
    minimizer_val_err = 0.0
    minimizer_loc_err = 0.0
    xs = np.arange(0.0, 1.0 + 1e-4, 1e-4)
    betas = default_semiclassical_betas()
    for beta in betas:
        curve = inversion.semiclassical_frontier(beta, 200) if beta < 1.0 \
            else inversion.semiclassical_frontier(beta, 2)
        endpoint_err_1 = max(endpoint_err_1, abs(curve.points[0].F - 1.0))
        endpoint_err_r = max(endpoint_err_r, abs(
            curve.points[-1].F - 2.0 * math.sqrt(beta) / (1.0 + beta)))
        for p_bar in semiclassical_probe_grid(beta, 11):
            gamma = math.sqrt(float(p_bar))
            vals = (gamma * xs + beta * (1 - xs)) / np.sqrt(
                gamma ** 2 * xs + beta ** 2 * (1 - xs))
            minimizer_val_err = max(minimizer_val_err, abs(
                float(vals.min()) - inversion.semiclassical_worst_fidelity(gamma, beta)))
            if gamma - beta > 1e-6:
                i = int(np.argmin(vals))
                x_loc, _ = oracle.golden_section_minimize(
                    lambda x: inversion.semiclassical_fidelity(gamma, beta, x),
                    float(xs[max(0, i - 1)]), float(xs[min(len(xs) - 1, i + 1)]))
                minimizer_loc_err = max(minimizer_loc_err, abs(
                    x_loc - inversion.semiclassical_worst_x(gamma, beta)))
    ordering = True
    for b1, b2 in zip(betas, betas[1:]):
        for p_bar in np.linspace(b2 * b2, 1.0, 21):
            g = math.sqrt(float(p_bar))
            ordering &= (inversion.semiclassical_worst_fidelity(g, b1)
                         <= inversion.semiclassical_worst_fidelity(g, b2) + 1e-12)
    elapsed = time.perf_counter() - t0
    _report(4, "semiclassical frontier",
            endpoint_err_1 <= 1e-12 and endpoint_err_r <= 1e-10
            and minimizer_val_err <= 1e-6 and minimizer_loc_err <= 1e-6
            and ordering and elapsed < 10.0,
            f"F(b^2) err {endpoint_err_1:.2e}, F(1) err {endpoint_err_r:.2e}, "
            f"minimizer value {minimizer_val_err:.2e} / location "
            f"{minimizer_loc_err:.2e}, ordering {ordering}, {elapsed:.2f}s")


def test_criterion_5_oracle_no_violation():
    cfg = SearchConfig()  # 256 restarts, 500 iterations, seed 0, tolerance 1e-6
    t0 = time.perf_counter()
    reports = []
    for s_psi, s_phi in default_transform_suite():
        grid = transform_probe_grid(s_psi, s_phi, 11)
        reports.extend(probe_transform_frontier(s_psi, s_phi, grid, cfg))
    for beta in default_semiclassical_betas():
        grid = semiclassical_probe_grid(beta, 11)
        reports.extend(probe_inversion_frontier(beta, "semiclassical", grid, cfg))
    beta, psi = default_quantum_case()
    _, s_in = inversion.primed_pair(beta, psi)
    grid = transform_probe_grid(s_in, psi.overlap, 11)
    reports.extend(probe_inversion_frontier(beta, "quantum", grid, cfg, psi=psi))
    elapsed = time.perf_counter() - t0
    worst_violation = max(r.violation for r in reports)
    attainability = min(r.violation for r in reports)
    _report(5, "oracle no-violation with attainability",
            worst_violation <= cfg.tolerance and attainability >= -cfg.tolerance
            and elapsed < 900.0,
            f"{len(reports)} grid points, max violation {worst_violation:.3e}, "
            f"attainability margin {attainability:.3e}, {elapsed:.1f}s")


def test_criterion_6_symmetrization_inequality():
    rng = np.random.default_rng(6)
    t0 = time.perf_counter()
    ok = True
    for _ in range(1_000):
        psi = transform.symmetric_pair(rng.uniform(0.0, 0.99))
        phi = transform.symmetric_pair(rng.uniform(0.0, 0.99))
        op = oracle.random_operation(int(rng.integers(1, 5)), rng)
        before = tradeoff.worst_case_merit(op, psi, phi)
        sym = transform.symmetrize_operation(op, psi, phi)
        after = tradeoff.worst_case_merit(sym, psi, phi)
        ok &= after.p >= before.p - 1e-10
        ok &= after.F >= before.F - 1e-10
    elapsed = time.perf_counter() - t0
    _report(6, "symmetrization never hurts",
            ok and elapsed < 10.0,
            f"1000 operations in {elapsed:.2f}s")


def test_criterion_7_quantum_inversion_delegation(tmp_path):
    beta = 0.5
    psi = inversion.contraction_input_pair(0.0)
    _, s_in = inversion.primed_pair(beta, psi)
    overlap_ok = abs(s_in - (1 - beta ** 2) / (1 + beta ** 2)) <= 1e-12

    runner = CliRunner()
    qi, tr = tmp_path / "qi.csv", tmp_path / "tr.csv"
    r1 = runner.invoke(cli_main, ["curve-quantum-inversion", "--beta", "0.5",
                                  "--overlap-in", "0", "--points", "200",
                                  "--output", str(qi)])
    r2 = runner.invoke(cli_main, ["curve-transform", "--s-psi", "0.6",
                                  "--s-phi", "0", "--points", "200",
                                  "--output", str(tr)])
    data = {}
    for name, path in (("qi", qi), ("tr", tr)):
        rows = [ln for ln in path.read_text().splitlines()
                if ln and not ln.startswith("#")][1:]
        data[name] = [",".join(r.split(",")[2:]) for r in rows]
    identical = (r1.exit_code == 0 and r2.exit_code == 0
                 and data["qi"] == data["tr"] and len(data["qi"]) == 200)
    _report(7, "quantum-inversion delegation",
            overlap_ok and identical,
            f"primed overlap {s_in!r}, curve byte-identity {identical}")
