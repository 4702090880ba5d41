"""
Spin-chain Hamiltonians as dense Hermitian matrices, with ground states and
exact time evolution through a cached eigendecomposition.
"""
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Dict, Tuple, Union

import numpy as np
import scipy.linalg

from .statevector import Statevector

HERMITICITY_TOLERANCE = 1e-12

PAULI = {
    'I': np.eye(2, dtype=np.complex128),
    'X': np.array([[0, 1], [1, 0]], dtype=np.complex128),
    'Y': np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    'Z': np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(eq=False)
class DenseHermitian:
    """
    Dense 2**n x 2**n Hermitian matrix.

    Raises:
        ValueError: If the matrix is not square, not a power-of-two size or
            not Hermitian within 1e-12
    """

    matrix: np.ndarray
    _spectrum: Tuple[np.ndarray, np.ndarray] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"Hamiltonian must be a square matrix, got shape {matrix.shape}")
        dim = matrix.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise ValueError(f"Hamiltonian dimension must be a power of two, got {dim}")
        deviation = float(np.max(np.abs(matrix - matrix.conj().T)))
        if deviation >= HERMITICITY_TOLERANCE:
            raise ValueError(f"Matrix is not Hermitian: max|H - H^dagger| = {deviation:.3e}")
        self.matrix = matrix

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    def spectrum(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Eigenvalues in ascending order and the matching eigenvector columns.
        Computed once per instance.
        """
        if self._spectrum is None:
            self._spectrum = scipy.linalg.eigh(self.matrix)
        return self._spectrum

    def expectation(self, psi: Statevector) -> float:
        """<psi|H|psi>."""
        return float(np.vdot(psi.amps, self.matrix @ psi.amps).real)


def pauli_string(n_qubits: int, factors: Dict[int, str]) -> np.ndarray:
    """
    Dense Kronecker product of single-qubit Paulis.

    Args:
        n_qubits: Number of qubits
        factors: Map from qubit (1-based) to 'X', 'Y' or 'Z'; other qubits get I

    Returns:
        2**n x 2**n complex matrix
    """
    return reduce(np.kron, [PAULI[factors.get(q, 'I')] for q in range(1, n_qubits + 1)])


def _wrap(qubit: int, n_qubits: int) -> int:
    return (qubit - 1) % n_qubits + 1


@lru_cache(maxsize=8)
def _cluster_terms(n_qubits: int) -> Tuple[np.ndarray, np.ndarray]:
    # Periodic chain: qubit n neighbours qubit 1. Both sums are cached read-only
    # and scaled by h per call
    stabilizers = sum(
        pauli_string(n_qubits, {_wrap(i - 1, n_qubits): 'X', i: 'Z', _wrap(i + 1, n_qubits): 'X'})
        for i in range(1, n_qubits + 1))
    hopping = sum(
        pauli_string(n_qubits, {i: 'Y', _wrap(i + 1, n_qubits): 'Y'})
        for i in range(1, n_qubits + 1))
    stabilizers.setflags(write=False)
    hopping.setflags(write=False)
    return stabilizers, hopping


@lru_cache(maxsize=8)
def _ising_terms(n_qubits: int) -> Tuple[np.ndarray, np.ndarray]:
    field_term = sum(pauli_string(n_qubits, {i: 'X'}) for i in range(1, n_qubits + 1))
    coupling = sum(
        pauli_string(n_qubits, {i: 'Z', j: 'Z'})
        for i in range(1, n_qubits + 1) for j in range(i + 1, n_qubits + 1))
    field_term.setflags(write=False)
    coupling.setflags(write=False)
    return field_term, coupling


def build_cluster(n_qubits: int, h: float) -> DenseHermitian:
    """
    H(h) = -sum_i X_{i-1} Z_i X_{i+1} + h sum_i Y_i Y_{i+1}, periodic boundaries.

    Raises:
        ValueError: If n_qubits < 3
    """
    if n_qubits < 3:
        raise ValueError(f"Cluster Hamiltonian needs at least 3 qubits, got {n_qubits}")
    stabilizers, hopping = _cluster_terms(n_qubits)
    return DenseHermitian(-stabilizers + h * hopping)


def build_ising(n_qubits: int, tau: float, coupling: float) -> DenseHermitian:
    """
    H(tau, J) = (1 - tau) sum_i X_i + tau sum_{i<j} J Z_i Z_j, all pairs coupled.

    Raises:
        ValueError: If n_qubits < 2 or tau is outside [0, 1]
    """
    if n_qubits < 2:
        raise ValueError(f"Ising Hamiltonian needs at least 2 qubits, got {n_qubits}")
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    field_term, zz = _ising_terms(n_qubits)
    return DenseHermitian((1.0 - tau) * field_term + tau * coupling * zz)


def _as_hermitian(hamiltonian: Union[DenseHermitian, np.ndarray]) -> DenseHermitian:
    if isinstance(hamiltonian, DenseHermitian):
        return hamiltonian
    return DenseHermitian(hamiltonian)


def ground_state(hamiltonian: Union[DenseHermitian, np.ndarray]) -> Statevector:
    """
    Eigenvector of the smallest eigenvalue.
    Ties resolve to the first column returned by the ascending eigensolver; the
    global phase makes the largest-magnitude amplitude real and positive.

    Raises:
        ValueError: If the input is not Hermitian
    """
    hamiltonian = _as_hermitian(hamiltonian)
    _, vectors = hamiltonian.spectrum()
    vector = vectors[:, 0].copy()
    # Global phase: the largest-magnitude amplitude becomes real and positive
    pivot = int(np.argmax(np.abs(vector)))
    vector *= np.conj(vector[pivot]) / np.abs(vector[pivot])
    vector[pivot] = np.abs(vector[pivot])
    vector /= np.linalg.norm(vector)
    return Statevector(hamiltonian.n_qubits, vector)


def ground_energy(hamiltonian: Union[DenseHermitian, np.ndarray]) -> float:
    """Smallest eigenvalue."""
    return float(_as_hermitian(hamiltonian).spectrum()[0][0])


def evolve(hamiltonian: Union[DenseHermitian, np.ndarray], psi: Statevector) -> Statevector:
    """
    exp(-iH) psi = V exp(-i Lambda) V^dagger psi.

    Raises:
        ValueError: If dimensions do not match
    """
    hamiltonian = _as_hermitian(hamiltonian)
    if hamiltonian.dim != psi.dim:
        raise ValueError(f"Dimension mismatch: H is {hamiltonian.dim}, psi is {psi.dim}")
    # Phases exp(-i E_k) applied in the eigenbasis of H
    values, vectors = hamiltonian.spectrum()
    amps = vectors @ (np.exp(-1j * values) * (vectors.conj().T @ psi.amps))
    return Statevector(psi.n_qubits, amps)
