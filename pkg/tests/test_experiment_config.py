"""
Unit tests for experiment configuration loading.
"""
import json
import os
import shutil
import sys
import tempfile
import unittest
from pathlib import Path

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from core.errors import ConfigurationError, InvalidSequenceError
from core.experiment_config import (DEFAULT_EWC_LAMBDA, ExperimentConfig, StrategyConfig,
                                    config_from_dict, load_config, validate_sequence)

CONFIG_DIR = Path(__file__).resolve().parent.parent / 'config'


class TestExperimentConfig(unittest.TestCase):
    """Test cases for ExperimentConfig and load_config."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def write(self, content: str) -> Path:
        path = Path(self.temp_dir) / 'config.json'
        path.write_text(content, encoding='utf-8')
        return path

    def test_defaults(self):
        config = ExperimentConfig()
        self.assertEqual(config.task_sequences, ['234561'])
        self.assertEqual(config.seeds, [1, 2, 3, 4, 5])
        self.assertEqual((config.batch_size, config.lr, config.epochs_per_task), (10, 0.1, 1))
        self.assertEqual(config.ewc_lambda, 10.0)

    def test_shipped_files(self):
        full = load_config(CONFIG_DIR / 'experiment.json')
        self.assertEqual(full.task_sequences, ['234561'])
        self.assertEqual(full.strategies, ['plain', 'ewc', 'gem'])
        self.assertEqual(full.n_qubits, 8)
        smoke = load_config(CONFIG_DIR / 'smoke.json')
        self.assertEqual(smoke.n_qubits, 4)
        self.assertTrue(smoke.debug_mode)

    def test_shipped_files_use_default_ewc_strength(self):
        for name in ('experiment.json', 'smoke.json'):
            config = load_config(CONFIG_DIR / name)
            self.assertEqual(config.ewc_lambda, DEFAULT_EWC_LAMBDA)
            self.assertEqual(config.strategy_config('ewc').ewc_lambda, DEFAULT_EWC_LAMBDA)
        self.assertEqual(StrategyConfig(kind='ewc').ewc_lambda, DEFAULT_EWC_LAMBDA)

    def test_missing_sections_use_defaults(self):
        config = config_from_dict({'training': {'lr': 0.05}})
        self.assertEqual(config.lr, 0.05)
        self.assertEqual(config.n_layers, 1)
        self.assertEqual(config.memory_size, 50)

    def test_sequence_list(self):
        config = config_from_dict({'experiment': {'task_sequence': ['123456', '246351']}})
        self.assertEqual(config.task_ids(), [1, 2, 3, 4, 5, 6])

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError) as ctx:
            load_config(Path(self.temp_dir) / 'absent.json')
        self.assertEqual(ctx.exception.exit_code, 2)

    def test_invalid_json(self):
        with self.assertRaises(ConfigurationError):
            load_config(self.write('{"training": '))

    def test_wrong_types(self):
        with self.assertRaises(ConfigurationError):
            config_from_dict({'training': {'batch_size': 'ten'}})
        with self.assertRaises(ConfigurationError):
            config_from_dict({'training': []})
        with self.assertRaises(ConfigurationError):
            config_from_dict({'strategies': {'enabled': ['agem']}})

    def test_invalid_sequence(self):
        path = self.write(json.dumps({'experiment': {'task_sequence': '123457'}}))
        with self.assertRaises(InvalidSequenceError) as ctx:
            load_config(path)
        self.assertEqual(ctx.exception.exit_code, 5)

    def test_validate_sequence(self):
        self.assertEqual(validate_sequence('436251'), [4, 3, 6, 2, 5, 1])
        self.assertEqual(validate_sequence('23'), [2, 3])
        for bad in ('', '1123', '0', '12a'):
            with self.assertRaises(InvalidSequenceError):
                validate_sequence(bad)

    def test_strategy_config(self):
        config = ExperimentConfig(ewc_lambda=3.0, memory_size=20, debug_mode=True)
        strategy = config.strategy_config('gem')
        self.assertEqual(strategy, StrategyConfig(kind='gem', ewc_lambda=3.0, memory_size=20,
                                                  fisher_samples=50, debug_checks=True))
        with self.assertRaises(ConfigurationError):
            StrategyConfig(kind='ewc', ewc_lambda=-1.0)


if __name__ == '__main__':
    unittest.main()
