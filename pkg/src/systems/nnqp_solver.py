"""
Non-negative quadratic programming and the episodic-memory gradient projection.
"""
import logging
from typing import Sequence

import numpy as np

from core.errors import ConvergenceError

logger = logging.getLogger(__name__)

KKT_TOLERANCE = 1e-8
DIAGONAL_FLOOR = 1e-12


def kkt_residual(m: np.ndarray, b: np.ndarray, v: np.ndarray) -> float:
    """
    Largest KKT violation of min 1/2 v'Mv + b'v s.t. v >= 0.
    Covers negativity of v, negative gradient at inactive coordinates and
    nonzero gradient at active ones.
    """
    grad = m @ v + b
    active = v > 0
    violations = [np.max(-v, initial=0.0),
                  np.max(-grad[~active], initial=0.0),
                  np.max(np.abs(grad[active]), initial=0.0)]
    return float(max(violations))


def solve_nnqp(m: np.ndarray, b: np.ndarray, tol: float = 1e-10, max_sweeps: int = 10000,
               check_kkt: bool = False) -> np.ndarray:
    """
    Minimize 1/2 v'Mv + b'v over v >= 0 by cyclic coordinate descent.

    Each coordinate update is v_k <- max(0, v_k - ((Mv)_k + b_k) / M_kk); coordinates
    with M_kk below 1e-12 are left at zero. Sweeps stop once the largest change
    falls below `tol`.

    Args:
        m: Symmetric positive semi-definite matrix (m x m)
        b: Linear term (m,)
        tol: Stopping threshold on the largest coordinate change
        max_sweeps: Sweep limit
        check_kkt: Assert the KKT conditions on the returned point

    Returns:
        Minimizer v* >= 0

    Raises:
        ConvergenceError: If the sweep limit is reached first
    """
    m = np.asarray(m, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    size = b.shape[0]
    v = np.zeros(size)
    diagonal = np.diag(m)
    for sweep in range(max_sweeps):
        largest_change = 0.0
        for k in range(size):
            if diagonal[k] < DIAGONAL_FLOOR:
                continue
            # Exact minimizer along coordinate k, clipped to the feasible half-line
            updated = max(0.0, v[k] - (m[k] @ v + b[k]) / diagonal[k])
            largest_change = max(largest_change, abs(updated - v[k]))
            v[k] = updated
        if largest_change < tol:
            break
    else:
        raise ConvergenceError(f"NNQP did not converge in {max_sweeps} sweeps",
                               residual=kkt_residual(m, b, v))
    if check_kkt:
        residual = kkt_residual(m, b, v)
        assert residual <= KKT_TOLERANCE, f"NNQP KKT residual {residual:.3e} after {sweep + 1} sweeps"
    return v


def gem_project(g: np.ndarray, memory_grads: Sequence[np.ndarray],
                check_kkt: bool = False) -> np.ndarray:
    """
    Project g onto the cone {z : <z, g_k> >= 0 for all k}.

    When every <g, g_k> is already non-negative, g itself is returned. Otherwise
    the dual v* = argmin_{v>=0} 1/2 v'Mv + b'v with M_kj = <g_k, g_j> and
    b_k = <g, g_k> gives the projection g + sum_k v*_k g_k.

    Args:
        g: Current task gradient (p,)
        memory_grads: Gradients g_k of the stored memories, each (p,)
        check_kkt: Forwarded to solve_nnqp

    Returns:
        Projected gradient

    Raises:
        ConvergenceError: If the dual solver does not converge
    """
    if len(memory_grads) == 0:
        return g
    stacked = np.stack(memory_grads)
    b = stacked @ g
    if np.all(b >= 0):
        return g
    # Dual of min 1/2 |z - g|^2 s.t. G z >= 0; the primal is recovered as g + G'v
    gram = stacked @ stacked.T
    v = solve_nnqp(gram, b, check_kkt=check_kkt)
    projected = g + v @ stacked
    logger.debug("Projected gradient against %d memories, v* = %s", len(memory_grads), v)
    return projected
