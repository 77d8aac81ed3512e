"""Maximum-probability transformations between pairs of qubit states.

Given an equal-prior ensemble of two pure input states and a pair of target
states, the largest mean success probability of any quantum operation
mapping one onto the other is

    p_max = min{ (1 - s_in) / (1 - s_out), 1 }

where s_in is the input overlap and s_out is the target overlap (the
Uhlmann fidelity of the targets when they are mixed).  The optimum is
reached by a balanced transformation, one that succeeds with the same
probability on both inputs; `build_balanced_kraus` constructs it
explicitly as a single Kraus operator, and
`max_feasible_probability_constructive` re-derives p_max from that
construction alone by bisection, independently of the formula.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import qstate
from .qstate import TOL_CONTRACTION

# Overlap / fidelity this close to 1 makes a target pair carry no
# distinguishing information.
DEGENERACY_TOL = 1e-12

# A pair must be swapped by the candidate mirror at least this well to
# count as symmetric about its axis.
SYMMETRY_TOL = 1e-10

_BISECTION_STEPS = 64


@dataclass(frozen=True)
class StatePair:
    """An ordered pair of pure qubit states (equal priors are implied)."""

    plus: np.ndarray
    minus: np.ndarray

    def __post_init__(self):
        p = qstate.check_pure_state(self.plus).copy()
        m = qstate.check_pure_state(self.minus).copy()
        p.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "plus", p)
        object.__setattr__(self, "minus", m)

    @property
    def overlap(self) -> float:
        return qstate.pure_overlap(self.plus, self.minus)


def symmetric_pair(overlap: float) -> StatePair:
    """Canonical symmetric pair with the given overlap.

    Both states lie in the x-z plane of the Bloch sphere, mirror-symmetric
    about the x axis: Bloch vectors (cos u, 0, +-sin u) with u =
    arccos(overlap).  Overlap 0 gives the computational basis pair.
    """
    if not 0.0 <= overlap <= 1.0:
        raise ValueError(f"overlap must be in [0, 1], got {overlap!r}")
    u = math.acos(overlap)
    tp = (math.pi / 2.0 - u) / 2.0
    tm = (math.pi / 2.0 + u) / 2.0
    return StatePair(
        np.array([math.cos(tp), math.sin(tp)], dtype=complex),
        np.array([math.cos(tm), math.sin(tm)], dtype=complex),
    )


def symmetry_axis(pair: StatePair) -> np.ndarray:
    """Unit Bloch vector of the mirror axis exchanging the two states.

    For distinct non-antipodal states this is the bisector of their Bloch
    vectors.  Antipodal pairs admit a circle of valid axes; the tie-break
    picks the one maximizing |x|, then |y|, with the leading nonzero
    component made positive.
    """
    rp = qstate.bloch_from_pure(pair.plus)
    rm = qstate.bloch_from_pure(pair.minus)
    s = rp + rm
    n = float(np.linalg.norm(s))
    if n > 1e-8:
        axis = s / n
    else:
        # Antipodal: any direction orthogonal to rp exchanges the pair
        # under a pi rotation.
        rhat = rp / float(np.linalg.norm(rp))
        v = np.array([1.0, 0.0, 0.0]) - rhat[0] * rhat
        if float(np.linalg.norm(v)) < 1e-8:
            v = np.array([0.0, 1.0, 0.0]) - rhat[1] * rhat
        axis = v / float(np.linalg.norm(v))
    for c in axis:
        if abs(c) > 1e-12:
            if c < 0.0:
                axis = -axis
            break
    return axis


def mirror_operator(axis) -> np.ndarray:
    """Unitary (and Hermitian) pi rotation about a Bloch axis: axis . sigma."""
    axis = np.asarray(axis, dtype=float)
    n = float(np.linalg.norm(axis))
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"mirror axis must be a unit vector, got norm {n!r}")
    return (axis[0] * qstate.PAULI_X + axis[1] * qstate.PAULI_Y
            + axis[2] * qstate.PAULI_Z)


def _check_unit_overlap(a, b, v, what: str) -> None:
    if abs(qstate.pure_overlap(a, v @ b) - 1.0) > SYMMETRY_TOL:
        raise ValueError(f"{what} pair is not in symmetric configuration "
                         "about the target symmetry axis")


def max_probability_pure(s_in: float, s_out: float) -> float:
    """Maximum mean transformation probability for pure targets.

    min{(1 - s_in)/(1 - s_out), 1} for input overlap s_in and target
    overlap s_out.  s_out = 1 with s_in < 1 is rejected: identical targets
    cannot be reached from a distinguishable pair with finite probability.
    """
    if not 0.0 <= s_in <= 1.0:
        raise ValueError(f"s_in must be in [0, 1], got {s_in!r}")
    if not 0.0 <= s_out <= 1.0:
        raise ValueError(f"s_out must be in [0, 1], got {s_out!r}")
    if s_out == 1.0:
        if s_in == 1.0:
            return 1.0
        raise ValueError("degenerate target pair: overlap 1 with distinguishable inputs")
    return min((1.0 - s_in) / (1.0 - s_out), 1.0)


def max_probability_mixed(s_in: float, targets) -> float:
    """Maximum mean transformation probability for generally mixed targets.

    Same expression as `max_probability_pure` with the target overlap
    replaced by the Uhlmann fidelity of the two target density matrices;
    for rank-1 targets the two coincide.
    """
    if not 0.0 <= s_in <= 1.0:
        raise ValueError(f"s_in must be in [0, 1], got {s_in!r}")
    rho_p, rho_m = targets
    f = qstate.uhlmann_fidelity(rho_p, rho_m)
    if f >= 1.0 - DEGENERACY_TOL:
        if s_in >= 1.0 - DEGENERACY_TOL:
            return 1.0
        raise ValueError("degenerate target pair: fidelity 1 with distinguishable inputs")
    return min((1.0 - s_in) / (1.0 - f), 1.0)


def build_balanced_kraus(psi: StatePair, phi: StatePair, p: float):
    """Single-Kraus operation sending both inputs to their targets at probability p.

    Returns [A] with A |psi+-> = sqrt(p) e^{i chi+-} |phi+->, or None when no
    contraction can do it (p exceeds the achievable maximum).  The global
    phase is fixed to chi+ = 0 and the relative phase is chosen in closed
    form to minimize sigma_max(A): it aligns the complex target overlap
    with the complex input overlap, which is exactly the choice that makes
    the feasibility threshold coincide with the analytic maximum.
    """
    if not 0.0 < p <= 1.0:
        raise ValueError(f"p must be in (0, 1], got {p!r}")
    c_in = complex(np.vdot(psi.plus, psi.minus))
    if abs(c_in) >= 1.0 - DEGENERACY_TOL:
        raise ValueError("input pair must be linearly independent")
    c_out = complex(np.vdot(phi.plus, phi.minus))
    chi = cmath.phase(c_in) - cmath.phase(c_out)
    targets = np.column_stack([phi.plus, cmath.exp(1j * chi) * phi.minus])
    sources = np.column_stack([psi.plus, psi.minus])
    a = math.sqrt(p) * targets @ np.linalg.inv(sources)
    if qstate.largest_singular_value(a) > 1.0 + TOL_CONTRACTION:
        return None
    return [a]


def max_feasible_probability_constructive(psi: StatePair, phi: StatePair) -> float:
    """Largest p for which `build_balanced_kraus` succeeds, by bisection.

    This re-derives the transformation probability purely from the
    constructive feasibility test (64 bisection steps on [0, 1]), giving an
    independent check of the analytic formula.
    """
    if build_balanced_kraus(psi, phi, 1.0) is not None:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if build_balanced_kraus(psi, phi, mid) is not None:
            lo = mid
        else:
            hi = mid
    return lo


def symmetrize_operation(op, psi: StatePair, phi: StatePair) -> list[np.ndarray]:
    """Average an operation with its mirror image about the pair symmetry axis.

    Both pairs must be symmetric about the axis of the target pair.  The
    result acts as rho -> (E(rho) + V E(V rho V) V)/2 with V the pi
    rotation about that axis; it succeeds with the same probability
    (p+ + p-)/2 on both inputs, and neither worst-case figure of merit
    ever drops below that of the original operation.
    """
    ks = qstate.check_operation(op)
    axis = symmetry_axis(phi)
    v = mirror_operator(axis)
    _check_unit_overlap(phi.plus, phi.minus, v, "target")
    _check_unit_overlap(psi.plus, psi.minus, v, "input")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    mirrored = [inv_sqrt2 * k for k in ks] + [inv_sqrt2 * (v @ k @ v) for k in ks]
    if len(mirrored) <= qstate.MAX_KRAUS:
        return mirrored
    # Compress back to at most four operators through the Choi matrix.
    return qstate.kraus_from_choi(qstate.choi_matrix(mirrored))
