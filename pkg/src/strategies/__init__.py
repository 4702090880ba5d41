# Continual-learning strategies
from core.experiment_config import StrategyConfig
from .strategy import ContinualStrategy
from .plain_strategy import PlainStrategy
from .ewc_strategy import EWCStrategy
from .gem_strategy import GEMStrategy


def create_strategy(config: StrategyConfig) -> ContinualStrategy:
    """Instantiate the strategy named by config.kind."""
    if config.kind == 'plain':
        return PlainStrategy(config)
    if config.kind == 'ewc':
        return EWCStrategy(config)
    if config.kind == 'gem':
        return GEMStrategy(config)
    raise ValueError(f"Unknown strategy kind: {config.kind}")


__all__ = ['ContinualStrategy', 'PlainStrategy', 'EWCStrategy', 'GEMStrategy', 'create_strategy']
