"""Shared samplers and small independent oracles for the test suite."""

import numpy as np

from probfid.transform import StatePair


def random_pure(rng) -> np.ndarray:
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    return v / np.linalg.norm(v)


def random_density(rng) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    rho = g @ g.conj().T
    return rho / rho.trace().real


def random_pair(rng) -> StatePair:
    return StatePair(random_pure(rng), random_pure(rng))


def ordered_random_pairs(rng) -> tuple[StatePair, StatePair]:
    """(inputs, targets) with target overlap <= input overlap."""
    a, b = random_pair(rng), random_pair(rng)
    if b.overlap > a.overlap:
        a, b = b, a
    return a, b


def commuting_fidelity(p: np.ndarray, q: np.ndarray) -> float:
    """Independent fidelity oracle for jointly diagonal spectra."""
    return float(np.sqrt(p * q).sum())


def channel_action(kraus, rho) -> np.ndarray:
    """Straight sum_j K rho K^dag with no validation (independent of library path)."""
    out = np.zeros((2, 2), dtype=complex)
    for k in kraus:
        out = out + np.asarray(k) @ rho @ np.asarray(k).conj().T
    return out
