"""
Test-accuracy curve figures.

One SVG per (sequence, strategy) shows the accuracy of every task of the
selected run from the iteration its training began, plus an overview grid with
sequences as rows and strategies as columns.
"""
import logging
from pathlib import Path
from typing import Dict, List, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .results_manager import STRATEGY_LABELS, STRATEGY_ORDER, ResultsManager

logger = logging.getLogger(__name__)

FIGSIZE = (8.0, 5.0)
DPI = 100
CELL_SIZE = (4.0, 2.5)

Series = Dict[int, List[Tuple[int, float]]]


def _draw_curves(ax, series: Series, iterations_per_epoch: int) -> None:
    for task_id in sorted(series):
        points = series[task_id]
        ax.plot([p[0] for p in points], [p[1] for p in points], linewidth=1.2,
                label=f"Task {task_id}")
    last = max((p[0] for points in series.values() for p in points), default=0)
    if iterations_per_epoch > 0:
        for boundary in range(iterations_per_epoch, last, iterations_per_epoch):
            ax.axvline(boundary, color='0.85', linewidth=0.6, zorder=0)
    ax.set_ylim(0.0, 1.02)
    ax.set_xlim(0, max(last, 1))


def _save_svg(fig, path: Path) -> None:
    # Fixed hash salt and no date keep the SVG bytes reproducible
    with matplotlib.rc_context({'svg.hashsalt': 'qcl-workbench'}):
        fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)


def plot_strategy_curves(series: Series, title: str, path: Union[str, Path],
                         iterations_per_epoch: int = 40) -> Path:
    """
    Write one accuracy-versus-iteration figure.

    Args:
        series: Task id -> [(iteration, accuracy)]
        title: Figure title
        path: Output SVG path
        iterations_per_epoch: Spacing of the epoch boundary guides

    Returns:
        Path written
    """
    path = Path(path)
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    _draw_curves(ax, series, iterations_per_epoch)
    ax.set_xlabel("Iteration")
    ax.set_ylabel("Test accuracy")
    ax.set_title(title)
    ax.legend(loc='lower left', fontsize='small', ncol=3)
    fig.tight_layout()
    _save_svg(fig, path)
    return path


def plot_overview(grid: Dict[str, Dict[str, Series]], path: Union[str, Path],
                  iterations_per_epoch: int = 40) -> Path:
    """
    Grid figure with rows = sequences and columns = strategies.

    Args:
        grid: sequence -> strategy -> series
        path: Output SVG path
    """
    path = Path(path)
    sequences = sorted(grid)
    n_rows = max(len(sequences), 1)
    n_cols = len(STRATEGY_ORDER)
    fig, axes = plt.subplots(n_rows, n_cols, squeeze=False, sharex=True, sharey=True,
                             figsize=(CELL_SIZE[0] * n_cols, CELL_SIZE[1] * n_rows), dpi=DPI)
    for row, sequence in enumerate(sequences):
        for col, kind in enumerate(STRATEGY_ORDER):
            ax = axes[row][col]
            series = grid[sequence].get(kind)
            if series:
                _draw_curves(ax, series, iterations_per_epoch)
            else:
                ax.text(0.5, 0.5, "no data", ha='center', va='center', transform=ax.transAxes)
            if row == 0:
                ax.set_title(STRATEGY_LABELS[kind])
            if col == 0:
                ax.set_ylabel(sequence)
    handles, labels = axes[0][0].get_legend_handles_labels()
    if handles:
        fig.legend(handles, labels, loc='lower center', ncol=len(labels), fontsize='small')
    fig.tight_layout(rect=(0, 0.05, 1, 1))
    _save_svg(fig, path)
    return path


def plot_results(results: ResultsManager, out_dir: Union[str, Path],
                 iterations_per_epoch: int = 40) -> List[Path]:
    """
    Emit curves_<sequence>_<strategy>.svg for every stored run and overview.svg.

    Returns:
        Paths written
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    grid: Dict[str, Dict[str, Series]] = {}
    for sequence, strategy in results.discover():
        series = results.read_curves(sequence, strategy)
        grid.setdefault(sequence, {})[strategy] = series
        title = f"{STRATEGY_LABELS.get(strategy, strategy)} on sequence {sequence}"
        written.append(plot_strategy_curves(series, title,
                                            out_dir / f"curves_{sequence}_{strategy}.svg",
                                            iterations_per_epoch))
    if grid:
        written.append(plot_overview(grid, out_dir / "overview.svg", iterations_per_epoch))
    logger.info("Wrote %d figures to %s", len(written), out_dir)
    return written
