"""
Results manager for persisting and reading back continual-learning runs.
Each (sequence, strategy) pair gets its own directory with curve and summary
CSVs, the best run's parameter checkpoint and a JSON sidecar.
"""
import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from core.errors import DatasetError
from objects.accuracy_matrix import AccuracyMatrix
from objects.classifier_params import save_params
from .continual_trainer import SequenceResult
from .metrics import acc, bwt

logger = logging.getLogger(__name__)

CURVES_FILE = 'curves.csv'
SUMMARY_FILE = 'summary.csv'
CHECKPOINT_FILE = 'best_params.qcp'
RUN_FILE = 'run.json'

CURVE_COLUMNS = ['sequence', 'strategy', 'seed', 'epoch', 'iteration', 'task_id', 'test_accuracy']
SUMMARY_COLUMNS = ['sequence', 'strategy', 'seed', 'task_learned', 'task_evaluated', 'accuracy']

STRATEGY_ORDER = ('plain', 'ewc', 'gem')
STRATEGY_LABELS = {'plain': 'Plain', 'ewc': 'EWC', 'gem': 'GEM'}

# Published ACC/BWT per sequence, (acc, bwt) for plain, ewc, gem
REFERENCE_RESULTS: Dict[str, Dict[str, Tuple[float, float]]] = {
    '123456': {'plain': (0.7277, 0.0268), 'ewc': (0.7812, -0.0268), 'gem': (0.8482, 0.0372)},
    '234561': {'plain': (0.6637, -0.1458), 'ewc': (0.7307, -0.0640), 'gem': (0.9524, 0.1503)},
    '436251': {'plain': (0.6920, -0.1443), 'ewc': (0.7693, -0.0565), 'gem': (0.9390, 0.0699)},
    '312456': {'plain': (0.7188, -0.0714), 'ewc': (0.7798, -0.0164), 'gem': (0.9554, 0.1071)},
    '246351': {'plain': (0.6310, -0.1815), 'ewc': (0.7188, -0.0223), 'gem': (0.9405, 0.1905)},
}


@dataclass
class ReportEntry:
    """Metrics of one (sequence, strategy) pair recomputed from its summary CSV."""

    sequence: str
    strategy: str
    selected_seed: int
    acc: float
    bwt: Optional[float]
    per_seed: Dict[int, Tuple[float, Optional[float]]]


class ResultsManager:
    """Manages the output directory of an experiment."""

    def __init__(self, out_dir: Union[str, Path] = "results"):
        """
        Initialize the results manager.

        Args:
            out_dir: Root directory for all run outputs
        """
        self.out_dir = Path(out_dir)

    def run_dir(self, sequence: str, strategy: str) -> Path:
        return self.out_dir / sequence / strategy

    def save_sequence_result(self, result: SequenceResult,
                             config: Optional[Dict[str, Any]] = None) -> Path:
        """
        Write curves, summary, best checkpoint and sidecar of one (sequence, strategy).

        Args:
            result: Output of run_sequence
            config: Configuration snapshot stored in the sidecar

        Returns:
            Directory written to
        """
        directory = self.run_dir(result.sequence, result.strategy)
        directory.mkdir(parents=True, exist_ok=True)

        with open(directory / CURVES_FILE, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(CURVE_COLUMNS)
            for run in result.runs:
                for point in run.history:
                    writer.writerow([result.sequence, result.strategy, run.seed, point.epoch,
                                     point.iteration, point.task_id, repr(point.test_accuracy)])

        with open(directory / SUMMARY_FILE, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(SUMMARY_COLUMNS)
            for run in result.runs:
                order = run.matrix.task_ids
                for i, learned in enumerate(order):
                    for j in range(i + 1):
                        writer.writerow([result.sequence, result.strategy, run.seed, learned,
                                         order[j], repr(run.matrix.get(i, j))])

        save_params(result.best.params, directory / CHECKPOINT_FILE)

        with open(directory / RUN_FILE, 'w', encoding='utf-8') as f:
            json.dump(self.create_run_data(result, config), f, indent=2, sort_keys=True)

        logger.info("Saved %s/%s results to %s", result.sequence, result.strategy, directory)
        return directory

    def create_run_data(self, result: SequenceResult,
                        config: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """Sidecar dictionary: per-seed metrics, selected seed, diagnostics, config."""
        return {
            'sequence': result.sequence,
            'strategy': result.strategy,
            'selected_seed': result.best.seed,
            'runs': [{'seed': run.seed, 'acc': run.acc, 'bwt': run.bwt,
                      'r': run.matrix.to_list(), 'diagnostics': run.diagnostics}
                     for run in result.runs],
            'config': config or {},
            'version': '1.0',
        }

    def load_run_data(self, sequence: str, strategy: str) -> Dict[str, Any]:
        """
        Read a run sidecar.

        Raises:
            DatasetError: If the file is missing or not valid JSON
        """
        path = self.run_dir(sequence, strategy) / RUN_FILE
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise DatasetError(f"Failed to read run sidecar {path}: {e}") from e

    def read_summary(self, sequence: str, strategy: str) -> Dict[int, AccuracyMatrix]:
        """
        Rebuild each seed's accuracy matrix from the summary CSV.

        Raises:
            DatasetError: If the file is missing or malformed
        """
        path = self.run_dir(sequence, strategy) / SUMMARY_FILE
        order = [int(c) for c in sequence]
        position = {task_id: i for i, task_id in enumerate(order)}
        matrices: Dict[int, AccuracyMatrix] = {}
        try:
            with open(path, 'r', newline='', encoding='utf-8') as f:
                reader = csv.DictReader(f)
                if reader.fieldnames != SUMMARY_COLUMNS:
                    raise DatasetError(f"{path} has columns {reader.fieldnames}")
                for row in reader:
                    seed = int(row['seed'])
                    matrix = matrices.setdefault(seed, AccuracyMatrix(len(order), order))
                    matrix.set(position[int(row['task_learned'])],
                               position[int(row['task_evaluated'])], float(row['accuracy']))
        except OSError as e:
            raise DatasetError(f"Failed to read summary {path}: {e}") from e
        except (KeyError, ValueError, IndexError) as e:
            raise DatasetError(f"Malformed summary {path}: {e}") from e
        return matrices

    def read_curves(self, sequence: str, strategy: str,
                    seed: Optional[int] = None) -> Dict[int, List[Tuple[int, float]]]:
        """
        Per-task (iteration, accuracy) series from the curve CSV.

        Args:
            sequence: Task order string
            strategy: Strategy kind
            seed: Restrict to one seed; None uses the selected seed from the sidecar

        Raises:
            DatasetError: If the file is missing or malformed
        """
        if seed is None:
            seed = int(self.load_run_data(sequence, strategy)['selected_seed'])
        path = self.run_dir(sequence, strategy) / CURVES_FILE
        series: Dict[int, List[Tuple[int, float]]] = {}
        try:
            with open(path, 'r', newline='', encoding='utf-8') as f:
                for row in csv.DictReader(f):
                    if int(row['seed']) != seed:
                        continue
                    series.setdefault(int(row['task_id']), []).append(
                        (int(row['iteration']), float(row['test_accuracy'])))
        except OSError as e:
            raise DatasetError(f"Failed to read curves {path}: {e}") from e
        except (KeyError, ValueError) as e:
            raise DatasetError(f"Malformed curves {path}: {e}") from e
        return series

    def discover(self) -> List[Tuple[str, str]]:
        """(sequence, strategy) pairs that have a summary CSV, sorted."""
        pairs = []
        for summary in sorted(self.out_dir.glob(f"*/*/{SUMMARY_FILE}")):
            pairs.append((summary.parent.parent.name, summary.parent.name))
        return pairs

    def collect_report(self) -> List[ReportEntry]:
        """
        Recompute ACC/BWT of every stored run from its summary CSV.
        The selected seed is the one with the highest ACC, the first listed on ties.
        """
        entries = []
        for sequence, strategy in self.discover():
            matrices = self.read_summary(sequence, strategy)
            per_seed = {}
            for seed, matrix in matrices.items():
                per_seed[seed] = (acc(matrix), bwt(matrix) if matrix.n_tasks > 1 else None)
            best_seed = None
            for seed, (value, _) in per_seed.items():
                if best_seed is None or value > per_seed[best_seed][0]:
                    best_seed = seed
            if best_seed is None:
                logger.warning("No runs stored for %s/%s", sequence, strategy)
                continue
            best_acc, best_bwt = per_seed[best_seed]
            entries.append(ReportEntry(sequence, strategy, best_seed, best_acc, best_bwt, per_seed))
        return entries


def _cell(value: Optional[float], signed: bool = False) -> str:
    if value is None:
        return 'n/a'
    return f"{value:+.4f}" if signed else f"{value:.4f}"


def format_report(entries: List[ReportEntry], reference: bool = False) -> str:
    """
    Table with one row per sequence and ACC/BWT columns per strategy.

    Args:
        entries: Output of ResultsManager.collect_report
        reference: Add the published values in parentheses where known
    """
    table: Dict[str, Dict[str, ReportEntry]] = {}
    for entry in entries:
        table.setdefault(entry.sequence, {})[entry.strategy] = entry

    width = 22 if reference else 9
    header = f"{'Sequence':<10}"
    for kind in STRATEGY_ORDER:
        label = STRATEGY_LABELS[kind]
        header += f" {label + ' ACC':>{width}} {label + ' BWT':>{width}}"
    lines = [header, '-' * len(header)]

    for sequence in sorted(table):
        line = f"{sequence:<10}"
        for kind in STRATEGY_ORDER:
            entry = table[sequence].get(kind)
            acc_text = _cell(entry.acc if entry else None)
            bwt_text = _cell(entry.bwt if entry else None, signed=True)
            ref = REFERENCE_RESULTS.get(sequence, {}).get(kind)
            if reference and ref is not None:
                acc_text += f" ({ref[0]:.4f})"
                bwt_text += f" ({ref[1]:+.4f})"
            line += f" {acc_text:>{width}} {bwt_text:>{width}}"
        lines.append(line)
    return "\n".join(lines)
