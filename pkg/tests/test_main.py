"""
Integration tests for the command-line entry point.
"""
import io
import json
import os
import shutil
import sys
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path
from unittest.mock import Mock, patch

ROOT = os.path.join(os.path.dirname(__file__), '..')
sys.path.insert(0, os.path.join(ROOT, 'src'))
sys.path.insert(0, ROOT)

import main as cli
from core.errors import ConvergenceError
from main import main


class TestMain(unittest.TestCase):
    """Test cases for the gen / run / report / plot subcommands."""

    def setUp(self):
        self.temp_dir = Path(tempfile.mkdtemp())
        self.data_dir = self.temp_dir / 'data'
        self.out_dir = self.temp_dir / 'results'

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write_config(self, sequence: str = '45') -> Path:
        path = self.temp_dir / 'config.json'
        path.write_text(json.dumps({
            'experiment': {'task_sequence': sequence, 'seeds': [1]},
            'classifier': {'n_qubits': 3, 'n_layers': 1},
            'strategies': {'memory_size': 10, 'fisher_samples': 10},
            'paths': {'data_dir': str(self.data_dir), 'out_dir': str(self.out_dir)},
            'logging': {'level': 'WARNING', 'show_progress': False},
        }), encoding='utf-8')
        return path

    def call(self, *argv: str) -> int:
        with redirect_stdout(io.StringIO()):
            return main(['--log-level', 'WARNING', *argv])

    def test_missing_config(self):
        self.assertEqual(self.call('run', '--config', str(self.temp_dir / 'absent.json')), 2)

    def test_invalid_sequence(self):
        config = self.write_config()
        self.assertEqual(self.call('run', '--config', str(config), '--sequence', '4457'), 5)

    def test_missing_dataset(self):
        config = self.write_config()
        self.assertEqual(self.call('run', '--config', str(config)), 3)
        self.assertFalse(self.out_dir.exists())

    def test_out_with_all(self):
        code = self.call('gen', '--all', '--out', str(self.temp_dir / 'x.qcd'))
        self.assertEqual(code, 2)

    def test_gen_rejects_qubit_counts_out_of_range(self):
        data = str(self.data_dir)
        self.assertEqual(self.call('gen', '--task', '1', '--nq', '2', '--data-dir', data), 2)
        self.assertEqual(self.call('gen', '--task', '3', '--nq', '1', '--data-dir', data), 2)
        self.assertEqual(self.call('gen', '--all', '--nq', '13', '--data-dir', data), 2)
        self.assertFalse(self.data_dir.exists())

    def test_interrupt_and_numeric_exit_codes(self):
        with patch.dict(cli.COMMANDS, {'report': Mock(side_effect=KeyboardInterrupt)}):
            self.assertEqual(self.call('report', '--in', str(self.out_dir)), 130)
        failing = Mock(side_effect=ConvergenceError("NNQP stalled", residual=1e-3))
        with patch.dict(cli.COMMANDS, {'report': failing}):
            self.assertEqual(self.call('report', '--in', str(self.out_dir)), 4)
        failing.assert_called_once()

    def test_full_pipeline(self):
        for task in ('4', '5'):
            code = self.call('gen', '--task', task, '--nq', '3', '--seed', '7',
                             '--data-dir', str(self.data_dir), '--no-progress')
            self.assertEqual(code, 0)
        self.assertTrue((self.data_dir / 'task4.qcd').exists())

        config = self.write_config()
        self.assertEqual(self.call('run', '--config', str(config)), 0)
        for strategy in ('plain', 'ewc', 'gem'):
            self.assertTrue((self.out_dir / '45' / strategy / 'summary.csv').exists())

        buffer = io.StringIO()
        with redirect_stdout(buffer):
            code = main(['--log-level', 'WARNING', 'report', '--in', str(self.out_dir)])
        self.assertEqual(code, 0)
        self.assertIn('45', buffer.getvalue())
        self.assertIn('GEM ACC', buffer.getvalue())

        figures = self.temp_dir / 'figures'
        code = self.call('plot', '--in', str(self.out_dir), '--out', str(figures))
        self.assertEqual(code, 0)
        self.assertTrue((figures / 'overview.svg').exists())
        self.assertTrue((figures / 'curves_45_gem.svg').exists())


if __name__ == '__main__':
    unittest.main()
