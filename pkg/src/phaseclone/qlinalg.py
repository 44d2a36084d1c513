"""Dense complex linear algebra for one- and two-qubit systems.

States are 1-D complex numpy arrays and operators 2-D complex numpy
arrays over the computational basis.  Two-qubit objects use the basis
ordering |00>, |01>, |10>, |11> with qubit "a" as the most significant
bit, so tensor(A, B) puts A on qubit a.  Constructors validate their
invariants and return read-only arrays; every value handed out by this
module can be shared freely across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Algebraic identities are enforced to ATOL; eigenvalue positivity only
# to the looser PSD_TOL because eigensolves amplify rounding.
ATOL = 1e-12
PSD_TOL = 1e-10

QUBIT_DIMS = (2, 4)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


SIGMA_X = _frozen(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
SIGMA_Y = _frozen(np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex))
SIGMA_Z = _frozen(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))
PAULIS = (SIGMA_X, SIGMA_Y, SIGMA_Z)


def _as_complex(entries, ndim: int) -> np.ndarray:
    arr = np.array(entries, dtype=complex)
    if arr.ndim != ndim:
        raise ValueError(f"expected a {ndim}-D array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("entries must be finite")
    return arr


def ket(amplitudes) -> np.ndarray:
    """Validate a state vector: unit norm, dimension 2 or 4."""
    psi = _as_complex(amplitudes, ndim=1)
    if psi.shape[0] not in QUBIT_DIMS:
        raise ValueError(f"state dimension must be one of {QUBIT_DIMS}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > ATOL:
        raise ValueError(f"state vector is not normalized: |psi| = {norm!r}")
    return _frozen(psi)


def basis_ket(dim: int, index: int) -> np.ndarray:
    if dim not in QUBIT_DIMS:
        raise ValueError(f"dimension must be one of {QUBIT_DIMS}")
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} out of range for dim {dim}")
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return _frozen(psi)


def unitary(entries) -> np.ndarray:
    """Validate a unitary matrix of dimension 2 or 4."""
    u = _as_complex(entries, ndim=2)
    if u.shape[0] != u.shape[1] or u.shape[0] not in QUBIT_DIMS:
        raise ValueError(f"matrix must be square with dimension in {QUBIT_DIMS}")
    defect = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if defect > ATOL:
        raise ValueError(f"matrix is not unitary: max |U^dag U - I| = {defect:.3e}")
    return _frozen(u)


def density(entries) -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive semidefinite."""
    rho = _as_complex(entries, ndim=2)
    if rho.shape[0] != rho.shape[1] or rho.shape[0] not in QUBIT_DIMS:
        raise ValueError(f"matrix must be square with dimension in {QUBIT_DIMS}")
    herm_defect = np.max(np.abs(rho - rho.conj().T))
    if herm_defect > ATOL:
        raise ValueError(f"matrix is not Hermitian: defect {herm_defect:.3e}")
    trace_defect = abs(rho.trace() - 1.0)
    if trace_defect > ATOL:
        raise ValueError(f"trace differs from 1 by {trace_defect:.3e}")
    lowest = np.linalg.eigvalsh(rho)[0]
    if lowest < -PSD_TOL:
        raise ValueError(f"matrix has a negative eigenvalue {lowest:.3e}")
    return _frozen(rho)


def pure_density(psi) -> np.ndarray:
    psi = ket(psi)
    return _frozen(np.outer(psi, psi.conj()))


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two single-qubit objects (both kets or both matrices)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != b.ndim or a.ndim not in (1, 2):
        raise ValueError("operands must be two kets or two matrices")
    if a.shape[0] != 2 or b.shape[0] != 2 or (a.ndim == 2 and a.shape != (2, 2)) or (
        b.ndim == 2 and b.shape != (2, 2)
    ):
        raise ValueError("operands must both have dimension 2")
    return _frozen(np.kron(a, b).astype(complex))


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Trace out one qubit of a two-qubit density matrix.

    keep="a" returns the state of the most significant qubit, keep="b"
    the least significant one.  The result is re-symmetrized to keep the
    Hermiticity defect at rounding level.
    """
    if keep not in ("a", "b"):
        raise ValueError('keep must be "a" or "b"')
    rho = density(rho)
    if rho.shape != (4, 4):
        raise ValueError("partial_trace expects a two-qubit density matrix")
    four = rho.reshape(2, 2, 2, 2)  # indices: a_row, b_row, a_col, b_col
    if keep == "a":
        reduced = np.trace(four, axis1=1, axis2=3)
    else:
        reduced = np.trace(four, axis1=0, axis2=2)
    reduced = 0.5 * (reduced + reduced.conj().T)
    return density(reduced)


@dataclass(frozen=True)
class BlochVector:
    """Pauli expectation values (x, y, z) = (<sx>, <sy>, <sz>) of one qubit."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        r = np.array([self.x, self.y, self.z], dtype=float)
        if not np.all(np.isfinite(r)):
            raise ValueError("Bloch components must be finite")
        if float(r @ r) > 1.0 + 1e-10:
            raise ValueError(f"Bloch vector has length > 1: {np.linalg.norm(r)!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def bloch_vector(rho: np.ndarray) -> BlochVector:
    rho = density(rho)
    if rho.shape != (2, 2):
        raise ValueError("bloch_vector expects a single-qubit density matrix")
    comps = [float(np.real(np.trace(rho @ sigma))) for sigma in PAULIS]
    return BlochVector(*comps)


def density_from_bloch(r: BlochVector) -> np.ndarray:
    rho = 0.5 * (np.eye(2, dtype=complex) + r.x * SIGMA_X + r.y * SIGMA_Y + r.z * SIGMA_Z)
    return density(rho)


def overlap_fidelity(rho: np.ndarray, psi: np.ndarray) -> float:
    """<psi|rho|psi> for a single-qubit state; real and clipped to [0, 1]."""
    rho = density(rho)
    psi = ket(psi)
    if rho.shape[0] != psi.shape[0]:
        raise ValueError("dimension mismatch between rho and psi")
    value = float(np.real(psi.conj() @ rho @ psi))
    return min(max(value, 0.0), 1.0)


def unitary_distance(u: np.ndarray, v: np.ndarray) -> float:
    """Phase-insensitive distance 1 - |Tr(U^dag V)| / dim, zero iff U = V up to a global phase."""
    u = unitary(u)
    v = unitary(v)
    if u.shape != v.shape:
        raise ValueError("dimension mismatch between the two unitaries")
    dim = u.shape[0]
    return max(0.0, 1.0 - abs(np.trace(u.conj().T @ v)) / dim)


def spin_rotation(angle: float, axis) -> np.ndarray:
    """exp(-i * angle * (sigma . n) / 2) for a unit axis n, in closed form."""
    n = np.asarray(axis, dtype=float)
    if n.shape != (3,) or not np.all(np.isfinite(n)):
        raise ValueError("axis must be a finite 3-vector")
    length = np.linalg.norm(n)
    if length < 1e-12:
        raise ValueError("axis must be nonzero")
    n = n / length
    sigma_n = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    half = 0.5 * float(angle)
    return _frozen(np.cos(half) * np.eye(2, dtype=complex) - 1j * np.sin(half) * sigma_n)
