"""Worst-case probability/fidelity frontier for approximate pair transformations.

An operation taking the input pair to states near a more-distinguishable
target pair is scored by worst-case merits over the two ensemble members:
p = min{p+, p-} and F the smaller of the two output fidelities with the
targets.  The achievable region in the (p, F) square is bounded by a
frontier connecting (p0, 1), where exact transformation becomes possible,
to (1, f0), the fidelity of doing nothing.  On [p0, 1] the frontier is

    F(p) = cos[(arccos(s_out) - arccos(1 - (1 - s_in)/p)) / 2]

and it is swept out by pure symmetric pairs tilted between the targets
and the inputs (`tilted_pair`), each reached exactly at its own maximum
probability.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import qstate
from .qstate import PROB_FLOOR
from .transform import StatePair, symmetry_axis

# Slack when checking curve monotonicity; frontier steps are far larger for
# any sane sampling density.
_MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class TradeoffPoint:
    """A (worst-case probability, worst-case fidelity) pair."""

    p: float
    F: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0 or not 0.0 <= self.F <= 1.0:
            raise ValueError(f"tradeoff point outside the unit square: {self}")


@dataclass(frozen=True)
class TradeoffCurve:
    """A sampled frontier: points strictly increasing in p, F non-increasing."""

    points: tuple
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("a tradeoff curve needs at least one point")
        for a, b in zip(pts, pts[1:]):
            if b.p <= a.p:
                raise ValueError(f"curve p values must strictly increase: {a.p!r} -> {b.p!r}")
            if b.F > a.F + _MONOTONE_TOL:
                raise ValueError(f"curve F values must not increase: {a.F!r} -> {b.F!r}")
        object.__setattr__(self, "points", pts)

    @property
    def ps(self) -> np.ndarray:
        return np.array([pt.p for pt in self.points])

    @property
    def fs(self) -> np.ndarray:
        return np.array([pt.F for pt in self.points])


def _check_overlaps(s_in: float, s_out: float) -> None:
    if not 0.0 <= s_out <= 1.0 or not 0.0 <= s_in < 1.0:
        raise ValueError(f"overlaps must satisfy 0 <= s_out <= s_in < 1, "
                         f"got s_in={s_in!r}, s_out={s_out!r}")
    if s_out > s_in:
        raise ValueError(f"target overlap {s_out!r} exceeds input overlap {s_in!r}; "
                         "the frontier is trivially (1, 1)")


def _half_gap_fidelity(s_out: float, x: float) -> float:
    # Overlap between adjacent members of two symmetric coplanar pairs with
    # pair overlaps s_out and x.
    return math.cos((math.acos(s_out) - math.acos(x)) / 2.0)


def anchor_points(s_psi: float, s_phi: float) -> tuple[float, float]:
    """Frontier endpoints: p0 where exact transformation starts, f0 at p = 1.

    p0 = (1 - s_psi)/(1 - s_phi) and f0 is the overlap between adjacent
    members of the two symmetric coplanar pairs, cos((arccos s_phi -
    arccos s_psi)/2).
    """
    _check_overlaps(s_psi, s_phi)
    p0 = (1.0 - s_psi) / (1.0 - s_phi)
    f0 = _half_gap_fidelity(s_phi, s_psi)
    return p0, f0


def tradeoff_fidelity(p: float, s_psi: float, s_phi: float) -> float:
    """Best worst-case fidelity achievable at worst-case probability p.

    Flat at 1 for p <= p0 (exact transformation is already possible), then
    strictly decreasing down to f0 at p = 1.
    """
    _check_overlaps(s_psi, s_phi)
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p!r}")
    p0 = (1.0 - s_psi) / (1.0 - s_phi)
    if p <= p0:
        return 1.0
    # 1 - (1 - s_psi)/p, grouped so that p = 1 yields s_psi exactly.
    x = (p - 1.0 + s_psi) / p
    x = min(1.0, max(-1.0, x))
    return _half_gap_fidelity(s_phi, x)


def worst_case_merit(op, psi: StatePair, phi: StatePair) -> TradeoffPoint:
    """Worst-case (probability, fidelity) of an operation on a pair problem.

    If either branch fires with probability below PROB_FLOOR there is no
    conditional state to score and the fidelity is reported as 0.
    """
    out_p, p_p = qstate.apply_operation(op, qstate.pure_density(psi.plus))
    out_m, p_m = qstate.apply_operation(op, qstate.pure_density(psi.minus))
    p = min(p_p, p_m)
    if p < PROB_FLOOR:
        return TradeoffPoint(p, 0.0)
    f_p = qstate.uhlmann_fidelity(qstate.pure_density(phi.plus), out_p / p_p)
    f_m = qstate.uhlmann_fidelity(qstate.pure_density(phi.minus), out_m / p_m)
    return TradeoffPoint(p, min(f_p, f_m))


def _tilt_toward(axis: np.ndarray, r: np.ndarray, tilt: float) -> np.ndarray:
    # Rotate r by `tilt` toward the axis, within span(axis, r).  Working in
    # each member's own plane keeps its fidelity exact even when the shared
    # frame is ill-determined (nearly antipodal pairs).
    cos_u = min(1.0, max(-1.0, float(r @ axis)))
    u = math.acos(cos_u)
    u_new = u - tilt
    if u_new < -1e-12:
        raise ValueError(f"tilt {tilt!r} exceeds the half-angle {u!r} "
                         "between the target and the symmetry axis")
    u_new = max(0.0, u_new)
    trans = r - float(r @ axis) * axis
    n_trans = float(np.linalg.norm(trans))
    if n_trans < 1e-12:
        if tilt > 1e-12:
            raise ValueError("target sits on the symmetry axis; only a zero tilt is defined")
        return r
    return math.cos(u_new) * axis + math.sin(u_new) * (trans / n_trans)


def tilted_pair(phi: StatePair, f: float) -> StatePair:
    """Symmetric pure pair tilted inward from the targets toward their axis.

    Each member moves by Bloch angle 2 arccos(f) in the plane it spans with
    the symmetry axis, so the returned states have fidelity exactly f with
    their respective targets.  Tilting past the symmetry axis (the two
    members crossing) is rejected.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError(f"fidelity must be in [0, 1], got {f!r}")
    if f == 1.0:
        return phi
    axis = symmetry_axis(phi)
    tilt = 2.0 * math.acos(f)
    r_plus = _tilt_toward(axis, qstate.bloch_from_pure(phi.plus), tilt)
    r_minus = _tilt_toward(axis, qstate.bloch_from_pure(phi.minus), tilt)
    return StatePair(qstate.pure_from_bloch(r_plus), qstate.pure_from_bloch(r_minus))


def frontier_curve(s_psi: float, s_phi: float, n: int) -> TradeoffCurve:
    """Sample the frontier at n probabilities uniform on [p0, 1].

    (Near-)equal overlaps give p0 = 1 and the curve collapses to the
    single point (1, 1): no tilt is required and nothing is traded off.
    """
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n!r}")
    p0, _ = anchor_points(s_psi, s_phi)
    meta = {"s_psi": s_psi, "s_phi": s_phi}
    if p0 >= 1.0 - _MONOTONE_TOL:
        return TradeoffCurve((TradeoffPoint(1.0, 1.0),), meta)
    pts = tuple(TradeoffPoint(float(p), tradeoff_fidelity(float(p), s_psi, s_phi))
                for p in np.linspace(p0, 1.0, n))
    return TradeoffCurve(pts, meta)
