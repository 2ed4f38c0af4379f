"""splitmix64 streams.

Output ``i`` (0-based) of the stream seeded with ``s`` is ``mix(s + (i+1)*GAMMA)``,
so any block of the stream can be produced independently and vectorized.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return _mix(self.state)


def block(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the stream as uint64."""
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed & MASK64) + idx * np.uint64(GAMMA)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


def bits(seed: int, start_word: int, nbits: int) -> np.ndarray:
    """First ``nbits`` bits of the stream from word ``start_word`` on, LSB of each word first."""
    words = block(seed, start_word, -(-nbits // 64))
    raw = words.astype("<u8").view(np.uint8)
    return np.unpackbits(raw, bitorder="little")[:nbits]


def words_for_bits(nbits: int) -> int:
    return -(-nbits // 64)
