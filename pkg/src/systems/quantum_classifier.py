"""
Variational quantum classifier: the layered circuit, Z measurements on every
qubit and a one-hidden-layer tanh network producing two class logits.
"""
from functools import lru_cache
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from core import circuit, gates
from core.statevector import Statevector
from objects.classifier_params import ClassifierParams
from objects.task_dataset import Sample, stack_samples

Batch = Union[Sequence[Sample], Tuple[np.ndarray, np.ndarray]]


class ForwardPass(NamedTuple):
    """Intermediate values of a batched forward pass."""

    psi_out: np.ndarray
    z: np.ndarray
    hidden: np.ndarray
    logits: np.ndarray


@lru_cache(maxsize=16)
def classifier_operations(n_qubits: int, n_layers: int) -> Tuple[circuit.Operation, ...]:
    """Gate list of the classifier circuit, layers followed by the final Rx(beta)."""
    return tuple(circuit.ansatz_operations(n_qubits, n_layers, final_rx=True))


def as_arrays(batch: Batch) -> Tuple[np.ndarray, np.ndarray]:
    """
    Normalize a batch to (states, labels) arrays.

    Raises:
        ValueError: If the batch is empty
    """
    if isinstance(batch, tuple) and len(batch) == 2 and isinstance(batch[0], np.ndarray):
        states, labels = batch
        if states.shape[0] == 0:
            raise ValueError("Batch must not be empty")
        return states, labels
    return stack_samples(batch)


def _check_shape(params: ClassifierParams, n_qubits: int) -> None:
    if params.n_qubits != n_qubits:
        raise ValueError(
            f"Parameters are shaped for {params.n_qubits} qubits, input has {n_qubits}")


def head_forward(params: ClassifierParams, z: np.ndarray) -> np.ndarray:
    """
    logits = W2 tanh(W1 z + b1) + b2.

    Args:
        params: Classifier parameters (only the head block is read)
        z: Measurement vector (N_q,) or batch (B, N_q)

    Returns:
        Logits of shape (2,) or (B, 2)
    """
    hidden = np.tanh(z @ params.w1.T + params.b1)
    return hidden @ params.w2.T + params.b2


def forward_states(params: ClassifierParams, states: np.ndarray) -> ForwardPass:
    """
    Batched forward pass on raw amplitudes.

    Args:
        params: Classifier parameters
        states: Amplitudes of shape (B, 2**N_q)

    Returns:
        ForwardPass with output states, measurements, hidden activations and logits
    """
    n_qubits = int(round(np.log2(states.shape[1])))
    _check_shape(params, n_qubits)
    ops = classifier_operations(n_qubits, params.n_layers)
    psi_out = circuit.run(ops, params.angles(), gates.to_tensor(states, n_qubits))
    z = gates.expect_z_all(psi_out)
    hidden = np.tanh(z @ params.w1.T + params.b1)
    logits = hidden @ params.w2.T + params.b2
    return ForwardPass(psi_out, z, hidden, logits)


def circuit_forward(params: ClassifierParams, x: Statevector) -> np.ndarray:
    """
    Measurement vector z_i = <x'|Z_i|x'> of the circuit output.

    Raises:
        ValueError: If the parameters do not match the state's qubit count
    """
    _check_shape(params, x.n_qubits)
    return forward_states(params, x.amps[np.newaxis, :]).z[0]


def cross_entropy(logits: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Per-sample softmax cross-entropy."""
    return logsumexp(logits, axis=1) - logits[np.arange(labels.shape[0]), labels]


def predict_states(params: ClassifierParams, states: np.ndarray) -> np.ndarray:
    """Predicted labels for a batch of amplitudes; ties resolve to label 0."""
    return np.argmax(forward_states(params, states).logits, axis=1)


def predict(params: ClassifierParams, x: Statevector) -> int:
    """Predicted label of one state; ties resolve to label 0."""
    _check_shape(params, x.n_qubits)
    return int(predict_states(params, x.amps[np.newaxis, :])[0])


def loss(params: ClassifierParams, batch: Batch) -> float:
    """
    Mean softmax cross-entropy over a batch, reduced in index order.

    Raises:
        ValueError: If the batch is empty
    """
    states, labels = as_arrays(batch)
    logits = forward_states(params, states).logits
    return float(np.mean(cross_entropy(logits, labels)))
