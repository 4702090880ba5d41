"""
Generators for the six quantum-state classification tasks.

Task 1: ground states of the cluster Hamiltonian, labelled by the SPT phase (h < 1).
Tasks 2-3: states synthesized to two concentratable-entanglement targets.
Tasks 4-6: |+>^n evolved under the transverse-field Ising model, labelled by sign(J).
"""
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from core import circuit, gates
from core.entanglement import concentratable_entanglement_fast, purity_sum_two_copy
from core.errors import DatasetError, SynthesisError
from core.hamiltonians import build_cluster, build_ising, evolve, ground_state
from core.seeding import STREAM_SAMPLE, STREAM_SPLIT, derive_seed, make_rng
from core.statevector import Statevector
from objects.task_dataset import Sample, TaskDataset
from .adam_optimizer import AdamState, adam_update

logger = logging.getLogger(__name__)

N_QUBITS = 8
N_SAMPLES = 512
N_TRAIN = 400

CE_TOLERANCE = 0.005
CE_MAX_ITERATIONS = 500
CE_MAX_RETRIES = 10
CE_ANSATZ_LAYERS = 2
CE_LEARNING_RATE = 0.05
# Half-width of the initial angle box around the product point |0...0>
CE_INIT_SCALE = 0.3

# Task roster
TASK_ROSTER: Dict[int, Dict[str, Any]] = {
    1: {
        'kind': 'cluster',
        'description': 'Classify the symmetry protected topological phases',
        'h_range': (0.0, 2.0),
    },
    2: {
        'kind': 'ce',
        'description': 'Classify between quantum states with CE=0.1 and CE=0.25',
        'ce_targets': (0.10, 0.25),
    },
    3: {
        'kind': 'ce',
        'description': 'Classify between quantum states with CE=0.15 and CE=0.45',
        'ce_targets': (0.15, 0.45),
    },
    4: {
        'kind': 'ising',
        'description': 'Classify states evolved under the transverse field Ising model with tau=0.25',
        'tau': 0.25,
        'j_range': (-1.0, 1.0),
    },
    5: {
        'kind': 'ising',
        'description': 'Classify states evolved under the transverse field Ising model with tau=0.5',
        'tau': 0.5,
        'j_range': (-1.0, 1.0),
    },
    6: {
        'kind': 'ising',
        'description': 'Classify states evolved under the transverse field Ising model with tau=0.75',
        'tau': 0.75,
        'j_range': (-1.0, 1.0),
    },
}

# Task orders used for the published comparison
TABLE_SEQUENCES = ('123456', '234561', '436251', '312456', '246351')


def split_samples(samples: List[Sample], params: List[float], task_id: int, seed: int,
                  n_train: int) -> Tuple[List[Sample], List[Sample], List[float], List[float]]:
    """
    Stratified seeded split: each class contributes n_train / 2 training samples,
    the rest go to the test split; both splits are then shuffled.

    Args:
        samples: All samples in generation order
        params: Generator parameter of each sample, kept aligned with the split
        task_id: Task id folded into the split seed
        seed: Master seed
        n_train: Training split size (even)

    Returns:
        (train, test, train_params, test_params)

    Raises:
        DatasetError: If a class is too small for its share of the training split
    """
    rng = make_rng(seed, STREAM_SPLIT, task_id)
    labels = np.array([sample.label for sample in samples])
    per_class = n_train // 2
    train_idx: List[int] = []
    test_idx: List[int] = []
    for label in (0, 1):
        members = np.flatnonzero(labels == label)
        if members.shape[0] < per_class:
            raise DatasetError(
                f"Task {task_id}: class {label} has {members.shape[0]} samples, "
                f"needs {per_class} for training")
        members = members[rng.permutation(members.shape[0])]
        train_idx += members[:per_class].tolist()
        test_idx += members[per_class:].tolist()
    train_idx = [train_idx[i] for i in rng.permutation(len(train_idx))]
    test_idx = [test_idx[i] for i in rng.permutation(len(test_idx))]
    return ([samples[i] for i in train_idx], [samples[i] for i in test_idx],
            [params[i] for i in train_idx], [params[i] for i in test_idx])


def _assemble(task_id: int, seed: int, samples: List[Sample], params: List[float],
              n_train: int, meta: Dict[str, Any]) -> TaskDataset:
    train, test, train_params, test_params = split_samples(samples, params, task_id, seed, n_train)
    meta = dict(meta, task_id=task_id, seed=seed, n_samples=len(samples), n_train=n_train,
                train_params=train_params, test_params=test_params)
    dataset = TaskDataset(task_id, train, test, meta)
    logger.info("Generated task %d: %d train / %d test samples, train classes %s",
                task_id, len(train), len(test), dataset.class_counts('train'))
    return dataset


def gen_task1(seed: int, n_qubits: int = N_QUBITS, n_samples: int = N_SAMPLES,
              n_train: int = N_TRAIN, show_progress: bool = False) -> TaskDataset:
    """
    Ground states of H(h) on an evenly spaced grid h in [0, 2] (inclusive),
    label 1 for h < 1 (SPT phase) and 0 otherwise.

    Raises:
        DatasetError: If an eigendecomposition fails
    """
    h_min, h_max = TASK_ROSTER[1]['h_range']
    grid = np.linspace(h_min, h_max, n_samples)
    samples = []
    for h in tqdm(grid, desc="Task 1 ground states", disable=not show_progress):
        try:
            state = ground_state(build_cluster(n_qubits, float(h)))
        except np.linalg.LinAlgError as e:
            raise DatasetError(f"Eigensolver failed for h={h}: {e}") from e
        samples.append(Sample(state, 1 if h < 1.0 else 0))
    meta = {'kind': 'cluster', 'n_qubits': n_qubits, 'param_name': 'h',
            'h_range': [h_min, h_max], 'label_rule': 'h < 1'}
    return _assemble(1, seed, samples, grid.tolist(), n_train, meta)


def generate_ce_state(target: float, tol: float = CE_TOLERANCE, seed: int = 0,
                      n_qubits: int = N_QUBITS, n_layers: int = CE_ANSATZ_LAYERS,
                      max_iterations: int = CE_MAX_ITERATIONS,
                      lr: float = CE_LEARNING_RATE,
                      init_scale: float = CE_INIT_SCALE) -> Statevector:
    """
    Synthesize a state whose concentratable entanglement is within `tol` of `target`.

    A layered ansatz (same layer structure as the classifier, no final Rx) acts on
    |0...0>. Its angles start uniform in [-init_scale, init_scale], close to the
    product point, and follow Adam on (CE - target)^2 with exact gradients from the
    two-copy purity identity pulled back through the circuit. The first iterate
    inside the band is returned, so each state stays about as close to |0...0> as
    its target allows.

    Args:
        target: CE target in (0, 0.5)
        tol: Accepted absolute deviation
        seed: Seed of the initial angles
        n_qubits: Number of qubits
        n_layers: Ansatz depth
        max_iterations: Iteration limit
        lr: Adam learning rate
        init_scale: Half-width of the initial angle box

    Returns:
        Statevector with |CE - target| <= tol

    Raises:
        ValueError: If target is outside (0, 0.5)
        SynthesisError: If the band is not reached within max_iterations
    """
    if not 0.0 < target < 0.5:
        raise ValueError(f"CE target must lie in (0, 0.5), got {target}")
    rng = np.random.default_rng(seed)
    ops = circuit.ansatz_operations(n_qubits, n_layers, final_rx=False)
    angles = rng.uniform(-init_scale, init_scale, size=circuit.count_parameters(ops))
    optimizer = AdamState.create(angles.shape[0], lr=lr)
    dim = 2 ** n_qubits
    initial = gates.to_tensor(Statevector.zero(n_qubits).amps, n_qubits)
    ce = float('nan')
    for _ in range(max_iterations + 1):
        psi = circuit.run(ops, angles, initial)
        amps = gates.to_flat(psi)[0]
        purity_sum, purity_grad = purity_sum_two_copy(amps, n_qubits)
        ce = 1.0 - purity_sum / dim
        if abs(ce - target) <= tol:
            return Statevector(n_qubits, amps / np.linalg.norm(amps))
        # d/d(conj psi) of (CE - target)^2
        lam = (2.0 * (ce - target) * (-1.0 / dim)) * purity_grad
        grad = circuit.adjoint_gradient(ops, angles, psi, gates.to_tensor(lam, n_qubits))[0]
        optimizer, angles = adam_update(optimizer, angles, grad)
    raise SynthesisError(
        f"CE synthesis for target {target} stopped at CE={ce:.4f} after {max_iterations} iterations")


def synthesize_ce_state(target: float, seed: int, tol: float = CE_TOLERANCE,
                        n_qubits: int = N_QUBITS, retries: int = CE_MAX_RETRIES) -> Statevector:
    """
    generate_ce_state with up to `retries` further attempts on derived sub-seeds.

    Raises:
        SynthesisError: If every attempt fails
    """
    last_error: Optional[SynthesisError] = None
    for attempt in range(retries + 1):
        try:
            return generate_ce_state(target, tol, derive_seed(seed, attempt), n_qubits)
        except SynthesisError as e:
            logger.debug("CE synthesis attempt %d failed: %s", attempt, e)
            last_error = e
    raise SynthesisError(f"CE synthesis failed after {retries + 1} attempts: {last_error}")


def gen_task_ce(task_id: int, seed: int, n_qubits: int = N_QUBITS, n_samples: int = N_SAMPLES,
                n_train: int = N_TRAIN, tol: float = CE_TOLERANCE,
                show_progress: bool = False) -> TaskDataset:
    """
    Balanced classes of synthesized states at the task's two CE targets;
    the lower-CE class is labelled 1.

    Raises:
        ValueError: If task_id is not 2 or 3
        SynthesisError: Propagated from synthesis
    """
    if task_id not in (2, 3):
        raise ValueError(f"CE tasks are 2 and 3, got {task_id}")
    low, high = sorted(TASK_ROSTER[task_id]['ce_targets'])
    per_class = n_samples // 2
    targets = [low] * per_class + [high] * (n_samples - per_class)
    samples = []
    measured = []
    for index, target in enumerate(tqdm(targets, desc=f"Task {task_id} CE states",
                                         disable=not show_progress)):
        sample_seed = derive_seed(seed, STREAM_SAMPLE, task_id, index)
        state = synthesize_ce_state(target, sample_seed, tol, n_qubits)
        samples.append(Sample(state, 1 if target == low else 0))
        measured.append(concentratable_entanglement_fast(state))
    meta = {'kind': 'ce', 'n_qubits': n_qubits, 'param_name': 'ce',
            'ce_targets': [low, high], 'tolerance': tol, 'init_scale': CE_INIT_SCALE,
            'threshold': (low + high) / 2.0, 'label_rule': 'ce < threshold'}
    return _assemble(task_id, seed, samples, measured, n_train, meta)


def gen_task_ising(task_id: int, seed: int, n_qubits: int = N_QUBITS, n_samples: int = N_SAMPLES,
                   n_train: int = N_TRAIN, show_progress: bool = False) -> TaskDataset:
    """
    exp(-i H(tau, J)) |+>^n on an evenly spaced grid J in [-1, 1] (inclusive),
    label 1 for J > 0.

    Raises:
        ValueError: If task_id is not 4, 5 or 6
    """
    if task_id not in (4, 5, 6):
        raise ValueError(f"Ising tasks are 4, 5 and 6, got {task_id}")
    tau = TASK_ROSTER[task_id]['tau']
    j_min, j_max = TASK_ROSTER[task_id]['j_range']
    grid = np.linspace(j_min, j_max, n_samples)
    initial = Statevector.plus(n_qubits)
    samples = []
    for coupling in tqdm(grid, desc=f"Task {task_id} Ising evolution", disable=not show_progress):
        try:
            state = evolve(build_ising(n_qubits, tau, float(coupling)), initial)
        except np.linalg.LinAlgError as e:
            raise DatasetError(f"Eigensolver failed for J={coupling}: {e}") from e
        samples.append(Sample(state, 1 if coupling > 0 else 0))
    meta = {'kind': 'ising', 'n_qubits': n_qubits, 'param_name': 'J', 'tau': tau,
            'j_range': [j_min, j_max], 'label_rule': 'J > 0'}
    return _assemble(task_id, seed, samples, grid.tolist(), n_train, meta)


def generate_task(task_id: int, seed: int, **kwargs) -> TaskDataset:
    """
    Dispatch to the generator of a task.

    Raises:
        ValueError: If the task id is not in the roster
    """
    if task_id not in TASK_ROSTER:
        raise ValueError(f"Unknown task id: {task_id}")
    kind = TASK_ROSTER[task_id]['kind']
    if kind == 'cluster':
        return gen_task1(seed, **kwargs)
    if kind == 'ce':
        return gen_task_ce(task_id, seed, **kwargs)
    return gen_task_ising(task_id, seed, **kwargs)
