"""
Trainable parameters of the quantum classifier: circuit angles plus the
post-processing network weights.

Flatten order: alpha[N_l][N_q][3] (C order), beta[N_q], W1[N_q][N_q] (row major),
b1[N_q], W2[2][N_q] (row major), b2[2].
"""
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Tuple, Union

import numpy as np

from core.errors import DatasetFormatError

CHECKPOINT_MAGIC = b'QCLP'
CHECKPOINT_VERSION = 1
_HEADER = np.dtype([('magic', 'S4'), ('version', '<u2'), ('n_qubits', '<u2'),
                    ('n_layers', '<u2'), ('reserved', '<u2')])
N_CLASSES = 2


@dataclass
class ClassifierParams:
    """theta = {alpha, beta, w} with w = (W1, b1, W2, b2)."""

    alpha: np.ndarray
    beta: np.ndarray
    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray

    @property
    def n_qubits(self) -> int:
        return self.beta.shape[0]

    @property
    def n_layers(self) -> int:
        return self.alpha.shape[0]

    @property
    def p(self) -> int:
        """Total number of real parameters."""
        return parameter_count(self.n_qubits, self.n_layers)

    @property
    def n_angles(self) -> int:
        """Number of circuit angles (alpha and beta)."""
        return self.alpha.size + self.beta.size

    def angles(self) -> np.ndarray:
        """Circuit angles in flatten order."""
        return np.concatenate([self.alpha.reshape(-1), self.beta])

    def flatten(self) -> np.ndarray:
        """All parameters as one real vector of length p."""
        return np.concatenate([self.alpha.reshape(-1), self.beta, self.w1.reshape(-1),
                               self.b1, self.w2.reshape(-1), self.b2]).astype(np.float64)

    @classmethod
    def unflatten(cls, vector: np.ndarray, n_qubits: int, n_layers: int) -> 'ClassifierParams':
        """
        Inverse of flatten.

        Raises:
            ValueError: If the vector length does not match the shape
        """
        vector = np.asarray(vector, dtype=np.float64)
        expected = parameter_count(n_qubits, n_layers)
        if vector.shape != (expected,):
            raise ValueError(f"Expected {expected} parameters, got shape {vector.shape}")
        pieces = {}
        offset = 0
        for name, shape in block_shapes(n_qubits, n_layers).items():
            size = int(np.prod(shape))
            pieces[name] = vector[offset:offset + size].reshape(shape).copy()
            offset += size
        return cls(**pieces)

    @classmethod
    def zeros(cls, n_qubits: int, n_layers: int) -> 'ClassifierParams':
        """All-zero parameters."""
        return cls.unflatten(np.zeros(parameter_count(n_qubits, n_layers)), n_qubits, n_layers)

    @classmethod
    def random(cls, n_qubits: int, n_layers: int, rng: np.random.Generator) -> 'ClassifierParams':
        """
        Random initialization: angles uniform in [-pi, pi], head weights and
        biases uniform in [-1/sqrt(N_q), 1/sqrt(N_q)].
        """
        bound = 1.0 / np.sqrt(n_qubits)
        return cls(
            alpha=rng.uniform(-np.pi, np.pi, size=(n_layers, n_qubits, 3)),
            beta=rng.uniform(-np.pi, np.pi, size=n_qubits),
            w1=rng.uniform(-bound, bound, size=(n_qubits, n_qubits)),
            b1=rng.uniform(-bound, bound, size=n_qubits),
            w2=rng.uniform(-bound, bound, size=(N_CLASSES, n_qubits)),
            b2=rng.uniform(-bound, bound, size=N_CLASSES),
        )


def block_shapes(n_qubits: int, n_layers: int) -> Dict[str, Tuple[int, ...]]:
    """Shapes of the parameter blocks in flatten order."""
    return {
        'alpha': (n_layers, n_qubits, 3),
        'beta': (n_qubits,),
        'w1': (n_qubits, n_qubits),
        'b1': (n_qubits,),
        'w2': (N_CLASSES, n_qubits),
        'b2': (N_CLASSES,),
    }


def block_slices(n_qubits: int, n_layers: int) -> Dict[str, slice]:
    """Slices of each parameter block inside the flat vector."""
    slices = {}
    offset = 0
    for name, shape in block_shapes(n_qubits, n_layers).items():
        size = int(np.prod(shape))
        slices[name] = slice(offset, offset + size)
        offset += size
    return slices


def parameter_count(n_qubits: int, n_layers: int) -> int:
    """p = 3 N_l N_q + N_q + N_q^2 + N_q + 2 N_q + 2."""
    return 3 * n_layers * n_qubits + n_qubits + n_qubits ** 2 + n_qubits + 2 * n_qubits + 2


def save_params(params: ClassifierParams, path: Union[str, Path]) -> None:
    """
    Write a checkpoint: little-endian header (magic 'QCLP', version, N_q, N_l,
    reserved) followed by the flat parameter vector as f64.
    """
    header = np.zeros(1, dtype=_HEADER)
    header['magic'] = CHECKPOINT_MAGIC
    header['version'] = CHECKPOINT_VERSION
    header['n_qubits'] = params.n_qubits
    header['n_layers'] = params.n_layers
    with open(path, 'wb') as f:
        f.write(header.tobytes())
        f.write(params.flatten().astype('<f8').tobytes())


def load_params(path: Union[str, Path]) -> ClassifierParams:
    """
    Read a checkpoint written by save_params.

    Raises:
        DatasetFormatError: On bad magic, version or length
    """
    data = Path(path).read_bytes()
    if len(data) < _HEADER.itemsize:
        raise DatasetFormatError("Checkpoint shorter than its header", offset=len(data))
    header = np.frombuffer(data, dtype=_HEADER, count=1)[0]
    if header['magic'] != CHECKPOINT_MAGIC:
        raise DatasetFormatError(f"Bad checkpoint magic {bytes(header['magic'])!r}", offset=0)
    if header['version'] != CHECKPOINT_VERSION:
        raise DatasetFormatError(f"Unsupported checkpoint version {header['version']}", offset=4)
    n_qubits = int(header['n_qubits'])
    n_layers = int(header['n_layers'])
    expected = _HEADER.itemsize + 8 * parameter_count(n_qubits, n_layers)
    if len(data) != expected:
        raise DatasetFormatError(
            f"Checkpoint length {len(data)} does not match expected {expected}",
            offset=min(len(data), expected))
    vector = np.frombuffer(data, dtype='<f8', offset=_HEADER.itemsize)
    return ClassifierParams.unflatten(vector, n_qubits, n_layers)
