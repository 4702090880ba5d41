"""
Dense statevector representation and the single-state gate API.
Qubit 1 is the most significant bit of the basis-state index.
"""
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import gates

NORM_TOLERANCE = 1e-10
MAX_QUBITS = 12


@dataclass(frozen=True, eq=False)
class Statevector:
    """
    Normalized vector of 2**n_qubits complex amplitudes.
    Instances are immutable; every gate returns a new state.
    """

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}")
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != 2 ** self.n_qubits:
            raise ValueError(
                f"Expected {2 ** self.n_qubits} amplitudes for {self.n_qubits} qubits, "
                f"got {amps.shape[0]}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"Statevector is not normalized: |psi|^2 = {norm!r}")
        amps.setflags(write=False)
        object.__setattr__(self, 'amps', amps)

    @property
    def dim(self) -> int:
        """Hilbert space dimension."""
        return 2 ** self.n_qubits

    def tensor(self) -> np.ndarray:
        """Batched qubit tensor with a batch of one."""
        return gates.to_tensor(self.amps, self.n_qubits)

    def norm_squared(self) -> float:
        """Squared 2-norm of the amplitudes."""
        return float(np.vdot(self.amps, self.amps).real)

    @classmethod
    def from_tensor(cls, tensor: np.ndarray) -> 'Statevector':
        """Build a state from a batched tensor holding exactly one state."""
        return cls(tensor.ndim - 1, gates.to_flat(tensor)[0])

    @classmethod
    def from_amplitudes(cls, amps: Sequence[complex], normalize: bool = False) -> 'Statevector':
        """
        Build a state from raw amplitudes.

        Args:
            amps: Amplitudes, length a power of two
            normalize: Rescale to unit norm before validation

        Returns:
            Statevector
        """
        amps = np.asarray(amps, dtype=np.complex128).reshape(-1)
        n_qubits = int(round(np.log2(amps.shape[0])))
        if normalize:
            amps = amps / np.linalg.norm(amps)
        return cls(n_qubits, amps)

    @classmethod
    def basis(cls, n_qubits: int, bits: str) -> 'Statevector':
        """
        Computational basis state from a bit string, qubit 1 first ('10' is |1>|0>).
        """
        if len(bits) != n_qubits or set(bits) - {'0', '1'}:
            raise ValueError(f"Bit string {bits!r} does not describe {n_qubits} qubits")
        amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
        amps[int(bits, 2)] = 1.0
        return cls(n_qubits, amps)

    @classmethod
    def zero(cls, n_qubits: int) -> 'Statevector':
        """|0...0>."""
        return cls.basis(n_qubits, '0' * n_qubits)

    @classmethod
    def plus(cls, n_qubits: int) -> 'Statevector':
        """|+>^n."""
        dim = 2 ** n_qubits
        return cls(n_qubits, np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))

    @classmethod
    def ghz(cls, n_qubits: int) -> 'Statevector':
        """(|0...0> + |1...1>) / sqrt(2)."""
        amps = np.zeros(2 ** n_qubits, dtype=np.complex128)
        amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
        return cls(n_qubits, amps)

    @classmethod
    def random(cls, n_qubits: int, rng: Optional[np.random.Generator] = None) -> 'Statevector':
        """Haar-like random state from complex Gaussian amplitudes."""
        rng = rng if rng is not None else np.random.default_rng()
        dim = 2 ** n_qubits
        amps = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return cls.from_amplitudes(amps, normalize=True)


def apply_rx(state: Statevector, qubit: int, angle: float) -> Statevector:
    """Rx(angle) = exp(-i angle X / 2) on one qubit."""
    gates.check_qubit(qubit, state.n_qubits)
    return Statevector.from_tensor(gates.apply_rx(state.tensor(), qubit, angle))


def apply_rz(state: Statevector, qubit: int, angle: float) -> Statevector:
    """Rz(angle) = exp(-i angle Z / 2) on one qubit."""
    gates.check_qubit(qubit, state.n_qubits)
    return Statevector.from_tensor(gates.apply_rz(state.tensor(), qubit, angle))


def apply_cnot(state: Statevector, control: int, target: int) -> Statevector:
    """
    Controlled NOT.

    Raises:
        ValueError: If control equals target
        IndexError: If either qubit is out of range
    """
    if control == target:
        raise ValueError(f"CNOT control and target must differ, got {control}")
    gates.check_qubit(control, state.n_qubits)
    gates.check_qubit(target, state.n_qubits)
    return Statevector.from_tensor(gates.apply_cnot(state.tensor(), control, target))


def expect_z(state: Statevector, qubit: int) -> float:
    """<psi|Z_qubit|psi>, a real number in [-1, 1]."""
    gates.check_qubit(qubit, state.n_qubits)
    return float(gates.expect_z_all(state.tensor())[0, qubit - 1])


def inner(state_a: Statevector, state_b: Statevector) -> complex:
    """
    <a|b>.

    Raises:
        ValueError: If the states have different qubit counts
    """
    if state_a.n_qubits != state_b.n_qubits:
        raise ValueError(
            f"Dimension mismatch: {state_a.n_qubits} vs {state_b.n_qubits} qubits")
    return complex(np.vdot(state_a.amps, state_b.amps))
