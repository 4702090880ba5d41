"""
Hardware-efficient ansatz as an explicit operation list, with a forward pass and
adjoint differentiation over a batch of states.
"""
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import gates


@dataclass(frozen=True)
class Operation:
    """One gate of a circuit. param_index is None for fixed gates."""

    kind: str  # 'rx', 'rz' or 'cnot'
    qubits: Tuple[int, ...]
    param_index: Optional[int] = None


def cnot_brick(n_qubits: int) -> List[Operation]:
    """
    One CNOT brick, in application order: the even-control group
    CNOT(2i, 2i+1) first, then the odd-control group CNOT(2i-1, 2i).
    """
    ops = []
    for i in range(1, (n_qubits - 1) // 2 + 1):
        ops.append(Operation('cnot', (2 * i, 2 * i + 1)))
    for i in range(1, n_qubits // 2 + 1):
        ops.append(Operation('cnot', (2 * i - 1, 2 * i)))
    return ops


def layer_operations(n_qubits: int, layer: int) -> List[Operation]:
    """
    Operations of layer U_j in application order.
    Angles are indexed as alpha[layer, qubit - 1, k] flattened in C order.

    Args:
        n_qubits: Number of qubits
        layer: Zero-based layer index

    Returns:
        List of operations
    """
    def index(qubit: int, k: int) -> int:
        return (layer * n_qubits + (qubit - 1)) * 3 + k

    ops = [Operation('rx', (q,), index(q, 0)) for q in range(1, n_qubits + 1)]
    ops += [Operation('rz', (q,), index(q, 1)) for q in range(1, n_qubits + 1)]
    brick = cnot_brick(n_qubits)
    ops += brick + brick
    ops += [Operation('rz', (q,), index(q, 2)) for q in range(1, n_qubits + 1)]
    return ops


def ansatz_operations(n_qubits: int, n_layers: int, final_rx: bool = True) -> List[Operation]:
    """
    The full circuit: n_layers copies of U_j, then optionally Rx(beta_i) on every qubit.
    Beta angles follow the alpha block in parameter order.
    """
    ops = []
    for layer in range(n_layers):
        ops += layer_operations(n_qubits, layer)
    if final_rx:
        offset = n_layers * n_qubits * 3
        ops += [Operation('rx', (q,), offset + q - 1) for q in range(1, n_qubits + 1)]
    return ops


def count_parameters(ops: List[Operation]) -> int:
    """Number of circuit angles referenced by an operation list."""
    indices = [op.param_index for op in ops if op.param_index is not None]
    return max(indices) + 1 if indices else 0


def _apply(tensor: np.ndarray, op: Operation, angles: np.ndarray, inverse: bool = False) -> np.ndarray:
    if op.kind == 'cnot':
        return gates.apply_cnot(tensor, op.qubits[0], op.qubits[1])
    angle = angles[op.param_index]
    if inverse:
        angle = -angle
    if op.kind == 'rx':
        return gates.apply_rx(tensor, op.qubits[0], angle)
    if op.kind == 'rz':
        return gates.apply_rz(tensor, op.qubits[0], angle)
    raise ValueError(f"Unknown gate kind: {op.kind}")


def run(ops: List[Operation], angles: np.ndarray, tensor: np.ndarray) -> np.ndarray:
    """
    Apply the operations in order.

    Args:
        ops: Operation list
        angles: Flat angle vector
        tensor: Batched input states

    Returns:
        Batched output states
    """
    for op in ops:
        tensor = _apply(tensor, op, angles)
    return tensor


def adjoint_gradient(ops: List[Operation], angles: np.ndarray,
                     psi_out: np.ndarray, lam_out: np.ndarray) -> np.ndarray:
    """
    Per-sample derivatives of a real function f(psi_out) with respect to every angle.

    lam_out must hold df/d(conj psi_out), e.g. O psi for f = <psi|O|psi>.
    For R_P(t) = exp(-i t P / 2) the derivative is Im <lam|P|psi> evaluated
    right after the gate; both vectors are then pulled back through the gate.

    Args:
        ops: Operation list used in the forward pass
        angles: Flat angle vector
        psi_out: Output states, batched tensor
        lam_out: Adjoint states, same shape

    Returns:
        Real array of shape (batch, len(angles))
    """
    batch = psi_out.shape[0]
    grads = np.zeros((batch, len(angles)))
    psi = psi_out
    lam = lam_out
    for op in reversed(ops):
        if op.param_index is not None:
            qubit = op.qubits[0]
            if op.kind == 'rx':
                p_psi = gates.apply_x(psi, qubit)
            else:
                p_psi = gates.apply_z(psi, qubit)
            overlap = np.sum((np.conj(lam) * p_psi).reshape(batch, -1), axis=1)
            grads[:, op.param_index] += overlap.imag
        psi = _apply(psi, op, angles, inverse=True)
        lam = _apply(lam, op, angles, inverse=True)
    return grads
