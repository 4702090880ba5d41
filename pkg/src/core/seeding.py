"""
Seed derivation for reproducible, order-independent random streams.
"""
import numpy as np

_MASK64 = (1 << 64) - 1


def splitmix64(value: int) -> int:
    """
    One round of the splitmix64 finalizer.

    Args:
        value: Any integer, reduced to 64 bits

    Returns:
        Mixed 64-bit integer
    """
    z = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, *parts: int) -> int:
    """
    Derive a child seed from a master seed and a path of integers.
    The state starts at splitmix64(master_seed) and each part is folded in
    as state = splitmix64(state ^ part).

    Args:
        master_seed: Root seed (u64)
        *parts: Integers identifying the stream, e.g. (task_id, sample_index)

    Returns:
        64-bit child seed
    """
    state = splitmix64(master_seed & _MASK64)
    for part in parts:
        state = splitmix64(state ^ (part & _MASK64))
    return state


def make_rng(master_seed: int, *parts: int) -> np.random.Generator:
    """Create a numpy Generator on the derived seed stream."""
    return np.random.default_rng(derive_seed(master_seed, *parts))


# Stream tags keep independent consumers apart
STREAM_INIT = 0x1A17
STREAM_SHUFFLE = 0x5F1E
STREAM_SELECT = 0x5E1C
STREAM_SPLIT = 0x5B17
STREAM_SAMPLE = 0x5A3B
