"""
Binary dataset files.

Layout (little-endian): magic 'QCLD', u16 version = 1, u16 n_qubits, u32 sample_count,
then per sample 2**n_qubits amplitudes as (f64 real, f64 imag), u8 label and
u8 split flag (0 = train, 1 = test). Train samples are written before test samples.
Task id and generator meta live in a JSON sidecar next to the file.
"""
import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from core.errors import DatasetFormatError
from core.statevector import MAX_QUBITS, NORM_TOLERANCE, Statevector
from objects.task_dataset import Sample, TaskDataset

logger = logging.getLogger(__name__)

MAGIC = b'QCLD'
VERSION = 1
HEADER = np.dtype([('magic', 'S4'), ('version', '<u2'), ('n_qubits', '<u2'),
                   ('sample_count', '<u4')])
SPLIT_TRAIN = 0
SPLIT_TEST = 1


def record_dtype(n_qubits: int) -> np.dtype:
    """Packed per-sample record."""
    return np.dtype([('amps', '<c16', (2 ** n_qubits,)), ('label', 'u1'), ('split', 'u1')])


def sidecar_path(path: Union[str, Path]) -> Path:
    """Location of the JSON meta file belonging to a dataset file."""
    path = Path(path)
    return path.with_name(path.name + '.json')


def save_dataset(dataset: TaskDataset, path: Union[str, Path]) -> None:
    """
    Write a dataset file and its JSON sidecar.

    Args:
        dataset: Dataset to store
        path: Target file path
    """
    path = Path(path)
    n_qubits = dataset.n_qubits
    samples = dataset.train + dataset.test
    records = np.zeros(len(samples), dtype=record_dtype(n_qubits))
    for index, sample in enumerate(samples):
        records[index]['amps'] = sample.state.amps
        records[index]['label'] = sample.label
        records[index]['split'] = SPLIT_TRAIN if index < len(dataset.train) else SPLIT_TEST
    header = np.zeros(1, dtype=HEADER)
    header['magic'] = MAGIC
    header['version'] = VERSION
    header['n_qubits'] = n_qubits
    header['sample_count'] = len(samples)

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'wb') as f:
        f.write(header.tobytes())
        f.write(records.tobytes())
    sidecar = {'task_id': dataset.task_id, 'meta': dataset.meta}
    with open(sidecar_path(path), 'w', encoding='utf-8') as f:
        json.dump(sidecar, f, indent=2, sort_keys=True)
    logger.info("Saved task %d dataset to %s", dataset.task_id, path)


def load_dataset(path: Union[str, Path]) -> TaskDataset:
    """
    Read and validate a dataset file.

    Raises:
        FileNotFoundError: If the file does not exist
        DatasetFormatError: On bad magic or version, truncation, trailing bytes,
            an invalid label or split flag, or an unnormalized state
    """
    path = Path(path)
    data = path.read_bytes()
    if len(data) < HEADER.itemsize:
        raise DatasetFormatError("File truncated inside the header", offset=len(data))
    header = np.frombuffer(data, dtype=HEADER, count=1)[0]
    if header['magic'] != MAGIC:
        raise DatasetFormatError(f"Bad magic {bytes(header['magic'])!r}", offset=0)
    if header['version'] != VERSION:
        raise DatasetFormatError(f"Unsupported version {int(header['version'])}", offset=4)
    n_qubits = int(header['n_qubits'])
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise DatasetFormatError(f"Unsupported qubit count {n_qubits}", offset=6)

    dtype = record_dtype(n_qubits)
    count = int(header['sample_count'])
    expected = HEADER.itemsize + count * dtype.itemsize
    if len(data) < expected:
        complete = (len(data) - HEADER.itemsize) // dtype.itemsize
        raise DatasetFormatError(f"File truncated: {len(data)} of {expected} bytes",
                                 offset=len(data), sample_index=complete)
    if len(data) > expected:
        raise DatasetFormatError(f"{len(data) - expected} trailing bytes", offset=expected)

    # Records are packed; error offsets follow from the record index
    records = np.frombuffer(data, dtype=dtype, count=count, offset=HEADER.itemsize)
    amps_size = dtype.fields['amps'][0].itemsize
    train, test = [], []
    for index, record in enumerate(records):
        base = HEADER.itemsize + index * dtype.itemsize
        # Fields are checked in file order; the first failure stops the load
        label = int(record['label'])
        if label not in (0, 1):
            raise DatasetFormatError(f"Invalid label byte {label}", offset=base + amps_size,
                                     sample_index=index)
        split = int(record['split'])
        if split not in (SPLIT_TRAIN, SPLIT_TEST):
            raise DatasetFormatError(f"Invalid split flag {split}", offset=base + amps_size + 1,
                                     sample_index=index)
        amps = np.array(record['amps'], dtype=np.complex128)
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise DatasetFormatError(f"State norm {norm!r} is not 1", offset=base,
                                     sample_index=index)
        sample = Sample(Statevector(n_qubits, amps), label)
        (train if split == SPLIT_TRAIN else test).append(sample)

    task_id, meta = 0, {}
    meta_path = sidecar_path(path)
    if meta_path.exists():
        with open(meta_path, 'r', encoding='utf-8') as f:
            sidecar = json.load(f)
        task_id = int(sidecar.get('task_id', 0))
        meta = sidecar.get('meta', {})
    return TaskDataset(task_id, train, test, meta)
