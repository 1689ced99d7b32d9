"""Counter-based random streams: every trial gets its own word from (seed, index)."""
from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = (1 << 64) - 1


def splitmix64(x):
    """SplitMix64 finalizer; works on scalars and uint64 arrays alike."""
    with np.errstate(over="ignore"):
        z = np.asarray(x, dtype=np.uint64) + _GOLDEN
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
        return z ^ (z >> np.uint64(31))


def stream_words(seed: int, index, salt: int = 0) -> np.ndarray:
    """Independent 64-bit words for trial ``index`` (scalar or array) under ``seed``."""
    s = splitmix64(np.uint64((int(seed) ^ (int(salt) * 0xD1B54A32D192ED03)) & _MASK64))
    with np.errstate(over="ignore"):
        return splitmix64(s ^ splitmix64(np.asarray(index, dtype=np.uint64)))


def uniform01(words) -> np.ndarray:
    """Map 64-bit words to doubles in [0, 1) using the top 53 bits."""
    return (np.asarray(words, dtype=np.uint64) >> np.uint64(11)).astype(np.float64) * 2.0**-53
