import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probfid import qstate
from probfid.tradeoff import (
    TradeoffCurve,
    TradeoffPoint,
    anchor_points,
    frontier_curve,
    tilted_pair,
    tradeoff_fidelity,
    worst_case_merit,
)
from probfid.transform import (
    StatePair,
    build_balanced_kraus,
    max_probability_pure,
    symmetric_pair,
)

# independently evaluated endpoints for the (0.6, 0.0) configuration:
# f0 = cos((arccos 0 - arccos 0.6)/2), cross-checked by explicit 2-vector
# construction of the two symmetric coplanar pairs
F0_06_00 = 0.9486832980505138
F_AT_07 = 0.9755787776764241  # cos((arccos 0 - arccos(1 - 0.4/0.7))/2)


# ---------------------------------------------------------------------------
# Anchors and the closed-form curve
# ---------------------------------------------------------------------------

def test_anchor_points_values():
    p0, f0 = anchor_points(0.6, 0.0)
    assert p0 == pytest.approx(0.4, abs=1e-15)
    assert f0 == pytest.approx(F0_06_00, abs=1e-15)
    assert anchor_points(0.9, 0.9) == (1.0, 1.0)
    assert anchor_points(0.3, 0.3) == (1.0, 1.0)


def test_anchor_points_validation():
    with pytest.raises(ValueError, match="exceeds"):
        anchor_points(0.3, 0.5)
    with pytest.raises(ValueError):
        anchor_points(1.0, 0.5)
    with pytest.raises(ValueError):
        anchor_points(0.5, -0.1)


def test_tradeoff_fidelity_values():
    assert tradeoff_fidelity(0.4, 0.6, 0.0) == 1.0
    assert tradeoff_fidelity(0.2, 0.6, 0.0) == 1.0  # left of p0: flat
    assert tradeoff_fidelity(0.7, 0.6, 0.0) == pytest.approx(F_AT_07, abs=1e-15)
    # analytic continuity: the p = 1 value is bit-identical to f0
    _, f0 = anchor_points(0.6, 0.0)
    assert tradeoff_fidelity(1.0, 0.6, 0.0) == f0


def test_tradeoff_fidelity_validation():
    with pytest.raises(ValueError, match="p must be"):
        tradeoff_fidelity(0.0, 0.6, 0.0)
    with pytest.raises(ValueError, match="p must be"):
        tradeoff_fidelity(1.1, 0.6, 0.0)
    with pytest.raises(ValueError, match="exceeds"):
        tradeoff_fidelity(0.5, 0.2, 0.6)


@settings(max_examples=200)
@given(s_psi=st.floats(0.01, 0.99), frac=st.floats(0.0, 0.99))
def test_tradeoff_fidelity_strictly_decreasing(s_psi, frac):
    s_phi = s_psi * frac
    p0, f0 = anchor_points(s_psi, s_phi)
    if 1.0 - p0 < 1e-6:
        return
    ps = np.linspace(p0, 1.0, 30)
    fs = [tradeoff_fidelity(float(p), s_psi, s_phi) for p in ps]
    assert all(b < a for a, b in zip(fs, fs[1:]))
    assert fs[0] == 1.0
    assert fs[-1] == f0


# ---------------------------------------------------------------------------
# Worst-case merit
# ---------------------------------------------------------------------------

def test_merit_identity_same_pairs():
    pair = symmetric_pair(0.5)
    m = worst_case_merit([qstate.IDENTITY], pair, pair)
    assert m.p == pytest.approx(1.0, abs=1e-14)
    assert m.F == pytest.approx(1.0, abs=1e-12)


def test_merit_identity_mismatched_pairs():
    psi, phi = symmetric_pair(0.6), symmetric_pair(0.0)
    _, f0 = anchor_points(0.6, 0.0)
    m = worst_case_merit([qstate.IDENTITY], psi, phi)
    assert m.p == pytest.approx(1.0, abs=1e-14)
    assert m.F == pytest.approx(f0, abs=1e-12)


def test_merit_of_exact_transformation_at_p0():
    psi, phi = symmetric_pair(0.6), symmetric_pair(0.0)
    op = build_balanced_kraus(psi, phi, 0.4)
    m = worst_case_merit(op, psi, phi)
    assert m.p == pytest.approx(0.4, abs=1e-8)
    assert m.F == pytest.approx(1.0, abs=1e-8)


def test_merit_zero_probability_reports_zero_fidelity():
    psi, phi = symmetric_pair(0.6), symmetric_pair(0.0)
    m = worst_case_merit([np.zeros((2, 2), dtype=complex)], psi, phi)
    assert m.p == 0.0
    assert m.F == 0.0


# ---------------------------------------------------------------------------
# Tilted pairs (the frontier sweep states)
# ---------------------------------------------------------------------------

def test_tilted_pair_no_tilt_returns_targets():
    phi = symmetric_pair(0.3)
    xi = tilted_pair(phi, 1.0)
    assert qstate.pure_overlap(xi.plus, phi.plus) == pytest.approx(1.0, abs=1e-12)
    assert qstate.pure_overlap(xi.minus, phi.minus) == pytest.approx(1.0, abs=1e-12)


def test_tilted_pair_at_f0_recovers_input_overlap():
    s_psi, s_phi = 0.6, 0.0
    _, f0 = anchor_points(s_psi, s_phi)
    xi = tilted_pair(symmetric_pair(s_phi), f0)
    assert xi.overlap == pytest.approx(s_psi, abs=1e-12)


def test_tilted_pair_overlap_value():
    # orthogonal targets tilted to fidelity 0.95: overlap from Bloch-angle
    # arithmetic, frozen from the explicit 2-vector oracle
    xi = tilted_pair(symmetric_pair(0.0), 0.95)
    assert xi.overlap == pytest.approx(0.5932748098478481, abs=1e-12)


@settings(max_examples=100)
@given(s_phi=st.floats(0.0, 0.95), f=st.floats(0.5, 1.0))
def test_tilted_pair_hits_requested_fidelity(s_phi, f):
    phi = symmetric_pair(s_phi)
    u_phi = math.acos(s_phi)
    if 2.0 * math.acos(f) > u_phi:
        with pytest.raises(ValueError, match="tilt"):
            tilted_pair(phi, f)
        return
    xi = tilted_pair(phi, f)
    assert qstate.pure_overlap(xi.plus, phi.plus) == pytest.approx(f, abs=1e-12)
    assert qstate.pure_overlap(xi.minus, phi.minus) == pytest.approx(f, abs=1e-12)
    # stays in the plane of the targets (x-z plane here)
    assert abs(qstate.bloch_from_pure(xi.plus)[1]) < 1e-12


def test_tilted_pair_validation():
    with pytest.raises(ValueError, match="fidelity"):
        tilted_pair(symmetric_pair(0.5), 1.5)


# ---------------------------------------------------------------------------
# Frontier curves
# ---------------------------------------------------------------------------

def test_frontier_curve_endpoints_and_meta():
    curve = frontier_curve(0.6, 0.0, 41)
    assert curve.meta == {"s_psi": 0.6, "s_phi": 0.0}
    assert curve.points[0] == TradeoffPoint(0.4, 1.0)
    assert curve.points[-1].p == 1.0
    assert curve.points[-1].F == anchor_points(0.6, 0.0)[1]
    assert len(curve.points) == 41


def test_frontier_curve_degenerate_equal_overlaps():
    curve = frontier_curve(0.5, 0.5, 10)
    assert curve.points == (TradeoffPoint(1.0, 1.0),)


def test_frontier_curve_validation():
    with pytest.raises(ValueError, match="2 points"):
        frontier_curve(0.6, 0.0, 1)


def test_curve_invariants_enforced():
    with pytest.raises(ValueError, match="strictly increase"):
        TradeoffCurve((TradeoffPoint(0.5, 1.0), TradeoffPoint(0.5, 0.9)))
    with pytest.raises(ValueError, match="not increase"):
        TradeoffCurve((TradeoffPoint(0.5, 0.8), TradeoffPoint(0.6, 0.9)))
    with pytest.raises(ValueError, match="at least one"):
        TradeoffCurve(())
    with pytest.raises(ValueError, match="unit square"):
        TradeoffPoint(1.2, 0.5)


def test_sweep_consistency_cross_check():
    # the tilted-pair route (overlap geometry + the probability formula)
    # must land on the closed-form curve
    for s_psi, s_phi in [(0.6, 0.0), (0.9, 0.4), (0.99, 0.09)]:
        phi = symmetric_pair(s_phi)
        _, f0 = anchor_points(s_psi, s_phi)
        for f in np.linspace(f0, 1.0, 22)[1:-1]:
            xi = tilted_pair(phi, float(f))
            p = max_probability_pure(s_psi, xi.overlap)
            assert tradeoff_fidelity(p, s_psi, s_phi) == pytest.approx(
                float(f), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(beta=st.floats(0.0, 1.0), gamma=st.floats(-1.0, 1.0))
def test_symmetric_pair_fidelity_identity(beta, gamma):
    # states (I +- beta sx + gamma sz)/2 have fidelity sqrt(1 - beta^2)
    if beta ** 2 + gamma ** 2 > 1.0:
        return
    rho_p = qstate.density_from_bloch([beta, 0.0, gamma])
    rho_m = qstate.density_from_bloch([-beta, 0.0, gamma])
    assert qstate.uhlmann_fidelity(rho_p, rho_m) == pytest.approx(
        math.sqrt(1.0 - beta ** 2), abs=1e-10)


def test_frontier_achievability():
    # every sampled frontier point is realized by the constructive operation
    for s_psi, s_phi in [(0.6, 0.0), (0.9, 0.5)]:
        psi, phi = symmetric_pair(s_psi), symmetric_pair(s_phi)
        curve = frontier_curve(s_psi, s_phi, 9)
        for pt in curve.points:
            op = build_balanced_kraus(psi, tilted_pair(phi, pt.F), pt.p)
            assert op is not None
            m = worst_case_merit(op, psi, phi)
            assert m.p >= pt.p - 1e-8
            assert m.F >= pt.F - 1e-8
