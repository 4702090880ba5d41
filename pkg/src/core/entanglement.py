"""
Reduced-state purities and concentratable entanglement (CE).

CE(psi) = 1 - 2**-n * sum over all qubit subsets A of Tr(rho_A^2).
Subsets are bitmasks where bit (q - 1) selects qubit q.
"""
from typing import List, Tuple

import numpy as np

from .statevector import Statevector


def qubits_in_mask(subset: int, n_qubits: int) -> List[int]:
    """Qubits (1-based) selected by a bitmask."""
    return [q for q in range(1, n_qubits + 1) if subset >> (q - 1) & 1]


def _purity_from_amps(amps: np.ndarray, n_qubits: int, subset: int) -> float:
    kept = [q - 1 for q in qubits_in_mask(subset, n_qubits)]
    if not kept or len(kept) == n_qubits:
        return float(np.vdot(amps, amps).real) ** 2
    traced = [q for q in range(n_qubits) if q not in kept]
    tensor = amps.reshape((2,) * n_qubits).transpose(kept + traced)
    matrix = tensor.reshape(2 ** len(kept), 2 ** len(traced))
    # rho_A = M M^dagger and M^dagger M share their nonzero spectrum
    if matrix.shape[0] <= matrix.shape[1]:
        rho = matrix @ matrix.conj().T
    else:
        rho = matrix.conj().T @ matrix
    return float(np.sum(np.abs(rho) ** 2))


def reduced_purity(psi: Statevector, subset: int) -> float:
    """
    Tr(rho_A^2) of the reduced density matrix on the qubits selected by `subset`.

    Args:
        psi: Pure state
        subset: Bitmask over qubits; 0 and the full mask give purity 1

    Returns:
        Purity in (0, 1]

    Raises:
        ValueError: If the mask selects qubits beyond n_qubits
    """
    if subset < 0 or subset >> psi.n_qubits:
        raise ValueError(f"Subset mask {subset:#x} exceeds {psi.n_qubits} qubits")
    return _purity_from_amps(psi.amps, psi.n_qubits, subset)


def concentratable_entanglement(psi: Statevector) -> float:
    """
    CE by brute force over all 2**n subset purities, summed in mask order.

    Returns:
        Value in [0, 1)
    """
    n_qubits = psi.n_qubits
    total = 0.0
    for subset in range(2 ** n_qubits):
        total += _purity_from_amps(psi.amps, n_qubits, subset)
    return 1.0 - total / 2 ** n_qubits


def purity_sum_two_copy(amps: np.ndarray, n_qubits: int) -> Tuple[float, np.ndarray]:
    """
    Sum of all subset purities through the two-copy identity
    sum_A Tr(rho_A^2) = <psi psi| prod_i (I + SWAP_i) |psi psi>,
    together with its derivative with respect to conj(psi).

    Args:
        amps: Flat amplitudes of a normalized state
        n_qubits: Number of qubits

    Returns:
        (purity sum, gradient) where gradient = 2 * Phi @ conj(psi) and
        Phi = prod_i (I + SWAP_i) |psi psi> as a dim x dim matrix
    """
    dim = 2 ** n_qubits
    phi = np.multiply.outer(amps, amps).reshape((2,) * (2 * n_qubits))
    for qubit in range(n_qubits):
        phi = phi + np.swapaxes(phi, qubit, n_qubits + qubit)
    phi = phi.reshape(dim, dim)
    total = float(np.vdot(amps, phi @ np.conj(amps)).real)
    # <psi psi|Phi> contracts the first copy with conj(psi) and the second with conj(psi)
    gradient = 2.0 * (phi @ np.conj(amps))
    return total, gradient


def concentratable_entanglement_fast(psi: Statevector) -> float:
    """CE through the two-copy identity; agrees with the brute-force sum."""
    total, _ = purity_sum_two_copy(psi.amps, psi.n_qubits)
    return 1.0 - total / 2 ** psi.n_qubits
