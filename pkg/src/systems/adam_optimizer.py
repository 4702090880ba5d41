"""
Adam parameter update on flat parameter vectors.
"""
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

DEFAULT_LR = 0.1
DEFAULT_BETA1 = 0.9
DEFAULT_BETA2 = 0.999
DEFAULT_EPS = 1e-8


@dataclass(frozen=True)
class AdamState:
    """First and second moment estimates plus hyperparameters."""

    m: np.ndarray
    v: np.ndarray
    step_count: int = 0
    lr: float = DEFAULT_LR
    beta1: float = DEFAULT_BETA1
    beta2: float = DEFAULT_BETA2
    eps: float = DEFAULT_EPS

    @classmethod
    def create(cls, n_params: int, lr: float = DEFAULT_LR, beta1: float = DEFAULT_BETA1,
               beta2: float = DEFAULT_BETA2, eps: float = DEFAULT_EPS) -> 'AdamState':
        """Fresh state with zero moments."""
        return cls(np.zeros(n_params), np.zeros(n_params), 0, lr, beta1, beta2, eps)


def adam_update(state: AdamState, params: np.ndarray,
                grad: np.ndarray) -> Tuple[AdamState, np.ndarray]:
    """
    One Adam step with bias correction.

    Args:
        state: Current optimizer state
        params: Flat parameter vector
        grad: Gradient (or projected direction) of the same length

    Returns:
        (new state, new parameters); inputs are left untouched

    Raises:
        ValueError: If lengths disagree
    """
    if params.shape != grad.shape or state.m.shape != grad.shape:
        raise ValueError(
            f"Shape mismatch: params {params.shape}, grad {grad.shape}, state {state.m.shape}")
    step = state.step_count + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grad
    v = state.beta2 * state.v + (1.0 - state.beta2) * grad ** 2
    m_hat = m / (1.0 - state.beta1 ** step)
    v_hat = v / (1.0 - state.beta2 ** step)
    new_params = params - state.lr * m_hat / (np.sqrt(v_hat) + state.eps)
    return replace(state, m=m, v=v, step_count=step), new_params
