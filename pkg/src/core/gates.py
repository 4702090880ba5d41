"""
Batched statevector kernels.
States are tensors of shape (batch, 2, 2, ..., 2); qubit q (1-based) lives on
axis q, so qubit 1 is the most significant bit of the flattened basis index.
Rotations follow R_P(theta) = exp(-i theta P / 2).
"""
import numpy as np


def to_tensor(amps: np.ndarray, n_qubits: int) -> np.ndarray:
    """
    Reshape flat amplitudes into the batched qubit tensor.

    Args:
        amps: Array of shape (dim,) or (batch, dim)
        n_qubits: Number of qubits

    Returns:
        Complex tensor of shape (batch,) + (2,) * n_qubits
    """
    amps = np.asarray(amps, dtype=np.complex128)
    if amps.ndim == 1:
        amps = amps[np.newaxis, :]
    return amps.reshape((amps.shape[0],) + (2,) * n_qubits)


def to_flat(tensor: np.ndarray) -> np.ndarray:
    """Flatten a batched qubit tensor back to shape (batch, dim)."""
    return tensor.reshape(tensor.shape[0], -1)


def check_qubit(qubit: int, n_qubits: int) -> None:
    """Raise IndexError unless 1 <= qubit <= n_qubits."""
    if not 1 <= qubit <= n_qubits:
        raise IndexError(f"Qubit index {qubit} out of range 1..{n_qubits}")


def _axis_shape(tensor: np.ndarray, qubit: int) -> tuple:
    shape = [1] * tensor.ndim
    shape[qubit] = 2
    return tuple(shape)


def apply_x(tensor: np.ndarray, qubit: int) -> np.ndarray:
    """Pauli X on one qubit (a flip of its axis)."""
    return np.flip(tensor, axis=qubit)


def apply_z(tensor: np.ndarray, qubit: int) -> np.ndarray:
    """Pauli Z on one qubit."""
    signs = np.array([1.0, -1.0]).reshape(_axis_shape(tensor, qubit))
    return tensor * signs


def apply_rx(tensor: np.ndarray, qubit: int, angle: float) -> np.ndarray:
    """Rx(angle) = cos(angle/2) I - i sin(angle/2) X."""
    c = np.cos(angle / 2.0)
    s = np.sin(angle / 2.0)
    return c * tensor - 1j * s * np.flip(tensor, axis=qubit)


def apply_rz(tensor: np.ndarray, qubit: int, angle: float) -> np.ndarray:
    """Rz(angle) = diag(exp(-i angle/2), exp(i angle/2))."""
    phases = np.exp(np.array([-0.5j, 0.5j]) * angle).reshape(_axis_shape(tensor, qubit))
    return tensor * phases


def apply_cnot(tensor: np.ndarray, control: int, target: int) -> np.ndarray:
    """
    CNOT as a basis permutation: where the control axis is 1, flip the target axis.

    Args:
        tensor: Batched qubit tensor
        control: Control qubit (1-based)
        target: Target qubit (1-based)

    Returns:
        New tensor; the input is not modified
    """
    if control == target:
        raise ValueError(f"CNOT control and target must differ, got {control}")
    out = tensor.copy()
    index = [slice(None)] * tensor.ndim
    index[control] = 1
    index = tuple(index)
    # The control axis disappears from the slice, shifting later axes left
    target_axis = target - 1 if target > control else target
    out[index] = np.flip(tensor[index], axis=target_axis)
    return out


def expect_z_all(tensor: np.ndarray) -> np.ndarray:
    """
    <Z_i> for every qubit of every state in the batch.

    Returns:
        Real array of shape (batch, n_qubits)
    """
    probs = np.abs(tensor) ** 2
    n_qubits = tensor.ndim - 1
    batch = tensor.shape[0]
    values = np.empty((batch, n_qubits))
    for qubit in range(1, n_qubits + 1):
        moved = np.moveaxis(probs, qubit, 1).reshape(batch, 2, -1)
        values[:, qubit - 1] = moved[:, 0, :].sum(axis=1) - moved[:, 1, :].sum(axis=1)
    return values


def weighted_z(tensor: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """
    Apply the diagonal observable sum_i weights[b, i] Z_i to each state.

    Args:
        tensor: Batched qubit tensor
        weights: Array of shape (batch, n_qubits)

    Returns:
        Tensor of the same shape as the input
    """
    n_qubits = tensor.ndim - 1
    diagonal = np.zeros(tensor.shape, dtype=np.float64)
    for qubit in range(1, n_qubits + 1):
        signs = np.array([1.0, -1.0]).reshape(_axis_shape(tensor, qubit))
        w = weights[:, qubit - 1].reshape((-1,) + (1,) * n_qubits)
        diagonal = diagonal + w * signs
    return diagonal * tensor
