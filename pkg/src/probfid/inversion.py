"""Probabilistic inversion of the atomic contraction diag(1, beta).

After the single-Kraus operation rho -> M rho M with M = diag(1, beta),
an inverting operation tries to restore the input, trading success
probability against worst-case fidelity.

Semiclassical case: inputs diag(x, 1-x) jointly diagonal with the
contraction, inverters N_gamma = diag(gamma, 1) with beta <= gamma <= 1.
Closed forms:

    p(gamma; x) = (gamma^2 x + beta^2 (1-x)) / (x + beta^2 (1-x))
    f(gamma; x) = (gamma x + beta (1-x)) / sqrt(gamma^2 x + beta^2 (1-x))

Keeping p >= p_bar for every input admits exactly gamma >= sqrt(p_bar),
and the floor gamma = sqrt(p_bar) maximizes the worst-case fidelity, whose
inner minimum over x sits at x* = beta/(gamma + beta) with value
2 sqrt(gamma beta) / (gamma + beta).

Quantum case: a pair of pure inputs is squeezed by the contraction into a
less distinguishable pair, and undoing that is exactly the pair
transformation problem, so the frontier is delegated to `tradeoff`.
"""

import math
from fractions import Fraction

import numpy as np

from . import qstate
from .tradeoff import TradeoffCurve, TradeoffPoint, frontier_curve
from .transform import StatePair


def _check_unit_interval(value: float, name: str) -> None:
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value!r}")


def contraction_matrix(beta: float) -> list[np.ndarray]:
    """Single-Kraus operation {diag(1, beta)}; beta is the smallest singular value."""
    _check_unit_interval(beta, "beta")
    return [np.diag([1.0, beta]).astype(complex)]


def inverter_matrix(gamma: float) -> list[np.ndarray]:
    """Single-Kraus diagonal inverter {diag(gamma, 1)}.

    At gamma = beta this is the rescaled matrix inverse of the contraction,
    the unit-fidelity (lowest-probability) end of the family.
    """
    _check_unit_interval(gamma, "gamma")
    return [np.diag([gamma, 1.0]).astype(complex)]


def _check_semiclassical_args(gamma: float, beta: float, x: float) -> None:
    _check_unit_interval(beta, "beta")
    _check_unit_interval(x, "x")
    if not beta <= gamma <= 1.0:
        raise ValueError(f"gamma must be in [beta, 1], got gamma={gamma!r}, beta={beta!r}")


def semiclassical_probability(gamma: float, beta: float, x: float) -> float:
    """Success probability of diag(gamma, 1) on the contracted state of diag(x, 1-x)."""
    _check_semiclassical_args(gamma, beta, x)
    denom = x + beta * beta * (1.0 - x)
    if denom < qstate.PROB_FLOOR:
        raise ValueError("input annihilated by contraction (beta = 0 and x = 0)")
    return (gamma * gamma * x + beta * beta * (1.0 - x)) / denom


def semiclassical_fidelity(gamma: float, beta: float, x: float) -> float:
    """Fidelity between diag(x, 1-x) and its contracted-then-inverted version."""
    _check_semiclassical_args(gamma, beta, x)
    if x + beta * beta * (1.0 - x) < qstate.PROB_FLOOR:
        raise ValueError("input annihilated by contraction (beta = 0 and x = 0)")
    denom = gamma * gamma * x + beta * beta * (1.0 - x)
    if denom < qstate.PROB_FLOOR:
        raise ValueError("inverter annihilates the contracted state")
    return (gamma * x + beta * (1.0 - x)) / math.sqrt(denom)


def admissible_set_floor(p_bar: float) -> float:
    """Smallest gamma keeping every semiclassical success probability >= p_bar.

    The worst-case probability of diag(gamma, 1) is gamma^2, so the floor
    is sqrt(p_bar); that floor is also the optimal inverter at threshold
    p_bar.
    """
    _check_unit_interval(p_bar, "p_bar")
    return math.sqrt(p_bar)


def semiclassical_worst_x(gamma: float, beta: float) -> float:
    """Input weight minimizing the semiclassical fidelity: x* = beta/(gamma+beta)."""
    if gamma + beta <= 0.0:
        raise ValueError("gamma + beta must be positive")
    return beta / (gamma + beta)


def semiclassical_worst_fidelity(gamma: float, beta: float) -> float:
    """Minimum over x of the semiclassical fidelity: 2 sqrt(gamma beta)/(gamma+beta)."""
    if gamma + beta <= 0.0:
        raise ValueError("gamma + beta must be positive")
    return 2.0 * math.sqrt(gamma * beta) / (gamma + beta)


def semiclassical_frontier(beta: float, n: int) -> TradeoffCurve:
    """Frontier of the semiclassical inversion, sampled on [beta^2, 1].

    Each threshold p_bar is paired with the worst-case fidelity of the
    optimal admissible inverter diag(sqrt(p_bar), 1).  beta = 0 is rejected:
    a projector cannot be inverted with nonvanishing worst-case fidelity.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"degenerate contraction: beta must be in (0, 1], got {beta!r}")
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n!r}")
    meta = {"beta": beta}
    if beta == 1.0:
        return TradeoffCurve((TradeoffPoint(1.0, 1.0),), meta)
    pts = []
    for p_bar in np.linspace(beta * beta, 1.0, n):
        gamma = math.sqrt(float(p_bar))
        pts.append(TradeoffPoint(float(p_bar), semiclassical_worst_fidelity(gamma, beta)))
    return TradeoffCurve(tuple(pts), meta)


def contraction_input_pair(overlap: float) -> StatePair:
    """Symmetric pair straddling the axis preserved by the contraction.

    Amplitudes [sqrt((1+s)/2), +-sqrt((1-s)/2)]: real states in the x-z
    Bloch plane, exchanged by the contraction's diagonal symmetry, with
    overlap exactly s.  Overlap 0 gives the (|0> +- |1>)/sqrt(2) pair, the
    configuration most affected by the contraction.
    """
    if not 0.0 <= overlap < 1.0:
        raise ValueError(f"overlap must be in [0, 1), got {overlap!r}")
    c = math.sqrt((1.0 + overlap) / 2.0)
    s = math.sqrt((1.0 - overlap) / 2.0)
    return StatePair(np.array([c, s], dtype=complex), np.array([c, -s], dtype=complex))


def _exact_primed_overlap(beta: float, psi: StatePair) -> float:
    # <psi+|M^2|psi-| / sqrt(<psi+|M^2|psi+><psi-|M^2|psi->) with M = diag(1, beta),
    # over exact rationals of the IEEE inputs: one rounding plus one sqrt, so
    # the overlap (and any curve delegated on it) is bit-reproducible.
    w2 = (Fraction(1), Fraction(beta) ** 2)
    re = im = Fraction(0)
    n2p = n2m = Fraction(0)
    for w, x, y in zip(w2, psi.plus, psi.minus):
        xr, xi = Fraction(float(x.real)), Fraction(float(x.imag))
        yr, yi = Fraction(float(y.real)), Fraction(float(y.imag))
        re += w * (xr * yr + xi * yi)
        im += w * (xr * yi - xi * yr)
        n2p += w * (xr * xr + xi * xi)
        n2m += w * (yr * yr + yi * yi)
    return min(1.0, math.sqrt(float((re * re + im * im) / (n2p * n2m))))


def primed_pair(beta: float, psi: StatePair) -> tuple[StatePair, float]:
    """Normalized post-contraction pair and its overlap.

    Returns (pair after diag(1, beta) with each member renormalized,
    |<plus'|minus'>|).  States annihilated by the contraction are rejected.
    """
    if not 0.0 < beta <= 1.0:
        raise ValueError(f"degenerate contraction: beta must be in (0, 1], got {beta!r}")
    vp = np.array([psi.plus[0], beta * psi.plus[1]])
    vm = np.array([psi.minus[0], beta * psi.minus[1]])
    norm_p = math.sqrt(float(np.vdot(vp, vp).real))
    norm_m = math.sqrt(float(np.vdot(vm, vm).real))
    if norm_p < 1e-12 or norm_m < 1e-12:
        raise ValueError("input state annihilated by the contraction")
    s_in = _exact_primed_overlap(beta, psi)
    return StatePair(vp / norm_p, vm / norm_m), s_in


def quantum_inversion_frontier(beta: float, psi: StatePair, n: int) -> TradeoffCurve:
    """Frontier for inverting the contraction on a pair of pure inputs.

    The contracted pair (overlap s_in) must be transformed back onto the
    original pair (overlap s_out), which is the pair-transformation
    tradeoff with those overlaps.  If the contraction somehow left the pair
    no less distinguishable (s_out >= s_in is only possible with equality,
    or for the trivial beta = 1), the inversion is deterministic and exact.

    This delegation scores inverters through the pair-transformation
    frontier; the brute-force oracle probes unrestricted operations against
    the same curve as an independent check.
    """
    if n < 2:
        raise ValueError(f"need at least 2 points, got {n!r}")
    _, s_in = primed_pair(beta, psi)
    s_out = psi.overlap
    meta = {"beta": beta, "s_in": s_in, "s_out": s_out}
    if s_out > s_in or s_in >= 1.0:
        if s_in >= 1.0 and s_out < 1.0:
            raise ValueError("contracted pair is indistinguishable; inversion frontier "
                             "degenerates to probability 0")
        return TradeoffCurve((TradeoffPoint(1.0, 1.0),), meta)
    curve = frontier_curve(s_in, s_out, n)
    return TradeoffCurve(curve.points, meta)
