#!/usr/bin/env python3
"""
Quantum continual-learning workbench
Main entry point: gen / run / report / plot
"""
import argparse
import logging
import sys
import os
from dataclasses import replace
from typing import List, Optional

# Add src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from core.errors import ConfigurationError, WorkbenchError
from core.experiment_config import ExperimentConfig, load_config
from core.workbench import Workbench, generate_datasets, plot, report
from systems.dataset_generator import N_QUBITS, TABLE_SEQUENCES, TASK_ROSTER

logger = logging.getLogger("qcl")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def setup_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """Configure the root logger with a stream handler and an optional file handler."""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(level=getattr(logging, level.upper(), logging.INFO),
                        format=LOG_FORMAT, handlers=handlers, force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Continual learning of quantum state classifiers")
    parser.add_argument('--log-level', default=None, help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument('--log-file', default=None, help="Also write the log to this file")
    sub = parser.add_subparsers(dest='command', required=True)

    gen = sub.add_parser('gen', help="Generate task datasets")
    which = gen.add_mutually_exclusive_group(required=True)
    which.add_argument('--all', action='store_true', help="Generate all six tasks")
    which.add_argument('--task', type=int, choices=sorted(TASK_ROSTER), help="Generate one task")
    gen.add_argument('--config', default=None,
                     help="Take qubits, data seed and data directory from this experiment file")
    gen.add_argument('--nq', type=int, default=None, help=f"Number of qubits (default {N_QUBITS})")
    gen.add_argument('--seed', type=int, default=None, help="Data seed (default 2024)")
    gen.add_argument('--data-dir', default=None, help="Output directory (default data)")
    gen.add_argument('--out', default=None, help="Explicit file path (single task only)")
    gen.add_argument('--no-progress', action='store_true', help="Hide progress bars")

    run = sub.add_parser('run', help="Train all configured sequences and strategies")
    run.add_argument('--config', required=True, help="Experiment JSON file")
    run.add_argument('--sequence', default=None,
                     help="Override the task order; 'table' runs all five published orders")

    rep = sub.add_parser('report', help="Print ACC/BWT per sequence and strategy")
    rep.add_argument('--in', dest='in_dir', required=True, help="Results directory")
    rep.add_argument('--reference', action='store_true', help="Show published values alongside")

    fig = sub.add_parser('plot', help="Write test-accuracy curve figures")
    fig.add_argument('--in', dest='in_dir', required=True, help="Results directory")
    fig.add_argument('--out', dest='out_dir', required=True, help="Figure directory")
    fig.add_argument('--iterations-per-epoch', type=int, default=40)
    return parser


# Dense Hamiltonians and the two-copy CE path stay tractable up to this size
MAX_GEN_QUBITS = 12


def check_gen_qubits(n_qubits: int, task_ids: List[int]) -> None:
    """Reject qubit counts the requested generators cannot build."""
    least = 3 if 1 in task_ids else 2
    if not least <= n_qubits <= MAX_GEN_QUBITS:
        raise ConfigurationError(
            f"--nq must lie in [{least}, {MAX_GEN_QUBITS}] for tasks {task_ids}, got {n_qubits}")


def cmd_gen(args: argparse.Namespace) -> int:
    if args.out and args.all:
        raise ConfigurationError("--out can only be used with --task")
    config = load_config(args.config) if args.config else ExperimentConfig()
    n_qubits = args.nq if args.nq is not None else config.n_qubits
    seed = args.seed if args.seed is not None else config.data_seed
    data_dir = args.data_dir if args.data_dir is not None else config.data_dir
    show_progress = config.show_progress and not args.no_progress
    task_ids = sorted(TASK_ROSTER) if args.all else [args.task]
    check_gen_qubits(n_qubits, task_ids)
    paths = generate_datasets(task_ids, seed, data_dir, n_qubits, args.out, show_progress)
    for path in paths:
        print(path)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    if args.sequence == 'table':
        config = replace(config, task_sequences=list(TABLE_SEQUENCES))
    elif args.sequence:
        config = replace(config, task_sequences=[args.sequence])
    if args.log_level is None:
        logging.getLogger().setLevel(getattr(logging, config.log_level.upper(), logging.INFO))
    results = Workbench(config).run()
    for result in results:
        bwt = "n/a" if result.best.bwt is None else f"{result.best.bwt:+.4f}"
        print(f"{result.sequence} {result.strategy}: seed {result.best.seed} "
              f"ACC={result.best.acc:.4f} BWT={bwt}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    print(report(args.in_dir, args.reference))
    return 0


def cmd_plot(args: argparse.Namespace) -> int:
    for path in plot(args.in_dir, args.out_dir, args.iterations_per_epoch):
        print(path)
    return 0


COMMANDS = {'gen': cmd_gen, 'run': cmd_run, 'report': cmd_report, 'plot': cmd_plot}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch the subcommand and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level or "INFO", args.log_file)
    try:
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        logger.warning("Interrupted by user.")
        return 130
    except WorkbenchError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
