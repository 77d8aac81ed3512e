"""Core linear algebra for qubit states and operations.

States are plain numpy arrays: pure states are complex 2-vectors, density
matrices are 2x2 complex Hermitian matrices, Bloch vectors are real
3-vectors, and a quantum operation is a list of at most four 2x2 Kraus
operators K_j with sum_j K_j^dag K_j <= I (trace non-increasing).

All functions are pure and never mutate their arguments, so everything in
this module is safe to share between threads.
"""

import math
from fractions import Fraction

import numpy as np

# Validation tolerances.  All quantities handled here are order 1, so double
# precision leaves ample headroom against these.
TOL_NORM = 1e-12          # |norm^2 - 1| for pure states
TOL_HERMITIAN = 1e-12     # entrywise deviation from the conjugate transpose
TOL_EIGENVALUE = 1e-12    # how negative an eigenvalue may be before we reject
TOL_TRACE = 1e-12         # |trace - 1| for density matrices
TOL_BLOCH = 1e-12         # norm overshoot allowed for Bloch vectors
TOL_CONTRACTION = 1e-10   # overshoot of lambda_max(sum K^dag K) above 1
PROB_FLOOR = 1e-12        # below this an outcome "almost never occurs"
MAX_KRAUS = 4             # Choi rank bound for qubit-to-qubit CP maps

IDENTITY = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

for _m in (IDENTITY, PAULI_X, PAULI_Y, PAULI_Z):
    _m.setflags(write=False)


def check_pure_state(psi) -> np.ndarray:
    """Validate and return a pure qubit state as a complex 2-vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (2,):
        raise ValueError(f"pure state must have 2 amplitudes, got shape {psi.shape}")
    n2 = float(np.vdot(psi, psi).real)
    if abs(n2 - 1.0) > TOL_NORM:
        raise ValueError(f"pure state not normalized: |psi|^2 = {n2!r}")
    return psi


def check_density_matrix(rho) -> np.ndarray:
    """Validate a 2x2 density matrix: Hermitian, PSD, unit trace."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"density matrix must be 2x2, got shape {rho.shape}")
    herm_err = float(np.abs(rho - rho.conj().T).max())
    if herm_err > TOL_HERMITIAN:
        raise ValueError(f"density matrix not Hermitian (max deviation {herm_err:.3e})")
    tr = float(rho.trace().real)
    if abs(tr - 1.0) > TOL_TRACE:
        raise ValueError(f"density matrix trace is {tr!r}, expected 1")
    w = np.linalg.eigvalsh(rho)
    if float(w.min()) < -TOL_EIGENVALUE:
        raise ValueError(f"density matrix has negative eigenvalue {float(w.min()):.3e}")
    return rho


def check_bloch_vector(r) -> np.ndarray:
    """Validate a Bloch vector: real 3-vector inside the unit ball."""
    r = np.asarray(r, dtype=float).reshape(-1)
    if r.shape != (3,):
        raise ValueError(f"Bloch vector must have 3 components, got shape {r.shape}")
    n = float(np.linalg.norm(r))
    if n > 1.0 + TOL_BLOCH:
        raise ValueError(f"Bloch vector outside the unit ball: |r| = {n!r}")
    return r


def kraus_gram(kraus) -> np.ndarray:
    """Return sum_j K_j^dag K_j for a list of Kraus operators."""
    g = np.zeros((2, 2), dtype=complex)
    for k in kraus:
        k = np.asarray(k, dtype=complex)
        g += k.conj().T @ k
    return g


def check_operation(kraus) -> list[np.ndarray]:
    """Validate a quantum operation given as a list of 2x2 Kraus operators.

    Trace non-increasing is enforced as lambda_max(sum K^dag K) <= 1 plus
    TOL_CONTRACTION; the list length is capped at MAX_KRAUS since a
    qubit-to-qubit CP map never needs more than four operators.
    """
    ks = [np.asarray(k, dtype=complex) for k in kraus]
    if not 1 <= len(ks) <= MAX_KRAUS:
        raise ValueError(f"operation needs 1..{MAX_KRAUS} Kraus operators, got {len(ks)}")
    for k in ks:
        if k.shape != (2, 2):
            raise ValueError(f"Kraus operator must be 2x2, got shape {k.shape}")
    lam = float(np.linalg.eigvalsh(kraus_gram(ks)).max())
    if lam > 1.0 + TOL_CONTRACTION:
        raise ValueError(f"operation is not trace non-increasing: lambda_max = {lam!r}")
    return ks


def pure_density(psi) -> np.ndarray:
    """Rank-1 density matrix |psi><psi|."""
    psi = check_pure_state(psi)
    return np.outer(psi, psi.conj())


def exact_overlap_sq(a, b) -> Fraction:
    """|<a|b>|^2 over the exact rationals of the IEEE amplitude components.

    No intermediate rounding, so the result is independent of BLAS build
    and summation order; exact cancellations (orthogonal pairs) yield an
    exact zero.
    """
    re = Fraction(0)
    im = Fraction(0)
    for x, y in zip(a, b):
        xr, xi = Fraction(float(x.real)), Fraction(float(x.imag))
        yr, yi = Fraction(float(y.real)), Fraction(float(y.imag))
        re += xr * yr + xi * yi
        im += xr * yi - xi * yr
    return re * re + im * im


def pure_overlap(a, b) -> float:
    """|<a|b>|, invariant under global phases of either argument."""
    a = check_pure_state(a)
    b = check_pure_state(b)
    return min(1.0, math.sqrt(float(exact_overlap_sq(a, b))))


def bloch_from_density(rho) -> np.ndarray:
    """Bloch vector r with rho = (I + r.sigma)/2."""
    rho = check_density_matrix(rho)
    return np.array([float(np.trace(rho @ s).real) for s in PAULIS])


def density_from_bloch(r) -> np.ndarray:
    """Density matrix (I + r.sigma)/2; inverse of bloch_from_density."""
    r = check_bloch_vector(r)
    return (IDENTITY + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z) / 2.0


def bloch_from_pure(psi) -> np.ndarray:
    """Bloch vector of a pure state, directly from its amplitudes."""
    psi = check_pure_state(psi)
    a, b = psi
    c = complex(a.conjugate() * b)
    return np.array([2.0 * c.real, 2.0 * c.imag, abs(a) ** 2 - abs(b) ** 2])


def pure_from_bloch(r) -> np.ndarray:
    """Pure state with the given unit Bloch vector, in a canonical phase.

    The returned amplitudes are [cos(theta/2), e^{i phi} sin(theta/2)] with
    theta, phi the polar angles of r.  Requires |r| = 1 within TOL_NORM.
    """
    r = check_bloch_vector(r)
    n = float(np.linalg.norm(r))
    if abs(n - 1.0) > 1e-9:
        raise ValueError(f"pure state requires a unit Bloch vector, got |r| = {n!r}")
    x, y, z = r / n
    theta = math.acos(min(1.0, max(-1.0, z)))
    phi = math.atan2(y, x)
    return np.array([math.cos(theta / 2.0),
                     complex(math.cos(phi), math.sin(phi)) * math.sin(theta / 2.0)],
                    dtype=complex)


def _clamped_sqrt_eigs(w: np.ndarray, what: str) -> np.ndarray:
    if float(w.min()) < -TOL_EIGENVALUE:
        raise ValueError(f"{what} has eigenvalue {float(w.min()):.3e} below -{TOL_EIGENVALUE}")
    return np.sqrt(np.clip(w, 0.0, None))


def sqrtm_psd(mat) -> np.ndarray:
    """Principal square root of a Hermitian PSD 2x2 matrix.

    Computed by eigendecomposition; eigenvalues in [-TOL_EIGENVALUE, 0) are
    clamped to 0 (numerical PSD drift), anything more negative is an error.
    """
    mat = np.asarray(mat, dtype=complex)
    w, v = np.linalg.eigh((mat + mat.conj().T) / 2.0)
    s = _clamped_sqrt_eigs(w, "matrix square root argument")
    return (v * s) @ v.conj().T


def uhlmann_fidelity(rho, sigma) -> float:
    """Uhlmann fidelity F(rho, sigma) = Tr sqrt(sqrt(rho) sigma sqrt(rho)).

    Symmetric in its arguments, equal to 1 iff the states coincide, and for
    commuting states reduces to sum_i sqrt(lambda_i mu_i).  Evaluated as the
    trace norm of sqrt(sigma) sqrt(rho), whose singular values are the
    square roots of the eigenvalues of sqrt(rho) sigma sqrt(rho); this
    avoids taking sqrt of eigenvalue-level noise at rank boundaries.
    """
    rho = check_density_matrix(rho)
    sigma = check_density_matrix(sigma)
    b = sqrtm_psd(sigma) @ sqrtm_psd(rho)
    f = float(np.linalg.svd(b, compute_uv=False).sum())
    return min(1.0, f)


def bloch_fidelity(r1, r2) -> float:
    """Fidelity between two qubit states given as Bloch vectors.

    Closed form: sqrt((1 + r1.r2 + sqrt((1-|r1|^2)(1-|r2|^2))) / 2).  When
    one state is pure the square-root term vanishes and this reduces to
    sqrt((1 + r1.r2)/2).
    """
    r1 = check_bloch_vector(r1)
    r2 = check_bloch_vector(r2)
    dot = float(r1 @ r2)
    t1 = max(0.0, 1.0 - float(r1 @ r1))
    t2 = max(0.0, 1.0 - float(r2 @ r2))
    val = (1.0 + dot + math.sqrt(t1 * t2)) / 2.0
    return math.sqrt(min(1.0, max(0.0, val)))


def apply_operation(kraus, rho) -> tuple[np.ndarray, float]:
    """Apply a quantum operation: return (sum_j K_j rho K_j^dag, probability).

    The first element is the unnormalized output; the probability is its
    trace, in [0, 1] up to TOL_CONTRACTION.  When the probability falls
    below PROB_FLOOR the outcome almost never occurs and the caller must
    not normalize the output.
    """
    ks = check_operation(kraus)
    rho = check_density_matrix(rho)
    out = np.zeros((2, 2), dtype=complex)
    for k in ks:
        out += k @ rho @ k.conj().T
    p = float(out.trace().real)
    if p > 1.0 + TOL_CONTRACTION:
        raise ValueError(f"operation produced probability {p!r} > 1")
    return out, max(0.0, p)


def largest_singular_value(mat) -> float:
    """sigma_max of a 2x2 matrix."""
    return float(np.linalg.norm(np.asarray(mat, dtype=complex), 2))


def choi_matrix(kraus) -> np.ndarray:
    """Choi matrix sum_j vec(K_j) vec(K_j)^dag (row-major vec, 4x4)."""
    c = np.zeros((4, 4), dtype=complex)
    for k in kraus:
        v = np.asarray(k, dtype=complex).reshape(-1)
        c += np.outer(v, v.conj())
    return c


def matrix_to_text(mat) -> str:
    """Canonical textual form of a complex matrix for test fixtures.

    Row-major, comma-separated entries "re+imj" carrying 17 significant
    digits, rows separated by semicolons; round-trips doubles exactly.
    """
    mat = np.asarray(mat, dtype=complex)
    rows = []
    for row in mat:
        rows.append(",".join(f"{z.real:.17g}{z.imag:+.17g}j" for z in row))
    return ";".join(rows)


def matrix_from_text(text: str) -> np.ndarray:
    """Parse the canonical textual matrix form back into an array."""
    rows = [[complex(tok) for tok in line.split(",")]
            for line in text.split(";")]
    return np.array(rows, dtype=complex)


def kraus_from_choi(choi) -> list[np.ndarray]:
    """Minimal Kraus list (at most 4 operators) reproducing a Choi matrix."""
    choi = np.asarray(choi, dtype=complex)
    w, v = np.linalg.eigh((choi + choi.conj().T) / 2.0)
    if float(w.min()) < -1e-10:
        raise ValueError(f"Choi matrix not PSD: eigenvalue {float(w.min()):.3e}")
    ks = []
    for lam, vec in sorted(zip(w, v.T), key=lambda t: -t[0]):
        if lam > 1e-14:
            ks.append(math.sqrt(float(lam)) * vec.reshape(2, 2))
    if not ks:
        ks.append(np.zeros((2, 2), dtype=complex))
    return ks
