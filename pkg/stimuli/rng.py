"""
Pinned pseudo-random generation.

SplitMix64 derives seeds; xoshiro256** produces the stream. The generator runs
LANES independent xoshiro256** states side by side in numpy uint64 arithmetic
(lane i seeded from the SplitMix64 outputs 4i..4i+3) and emits their outputs
step-major, so every draw is a fixed function of the seed on any platform.
"""
import math
from typing import List, Sequence

import numpy as np

MASK64 = (1 << 64) - 1
LANES = 64
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_POW_MINUS_53 = 1.0 / (1 << 53)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + _GOLDEN) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def splitmix64(value: int) -> int:
    """First SplitMix64 output for a given state, used for per-item seeds"""
    return SplitMix64(value).next()


def derive_seed(base_seed: int, index: int) -> int:
    return splitmix64((base_seed ^ index) & MASK64)


def _rotl(x: np.ndarray, k: int) -> np.ndarray:
    return (x << np.uint64(k)) | (x >> np.uint64(64 - k))


class PinnedRng:
    """xoshiro256** over parallel lanes with buffered, chunk-independent draws"""

    def __init__(self, seed: int, stream: int = 0, lanes: int = LANES):
        mixer = SplitMix64((seed ^ (stream * _GOLDEN)) & MASK64)
        words = [mixer.next() for _ in range(4 * lanes)]
        state = np.array(words, dtype=np.uint64).reshape(lanes, 4).T.copy()
        self._s0, self._s1, self._s2, self._s3 = (state[i].copy() for i in range(4))
        self._buffer = np.empty(0, dtype=np.uint64)

    def _step(self) -> np.ndarray:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = _rotl(s1 * np.uint64(5), 7) * np.uint64(9)
        t = s1 << np.uint64(17)
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s3 = s3
        return result

    def next_u64(self, n: int) -> np.ndarray:
        lanes = self._s0.size
        chunks: List[np.ndarray] = [self._buffer]
        available = self._buffer.size
        while available < n:
            block = self._step()
            chunks.append(block)
            available += lanes
        stream = np.concatenate(chunks)
        self._buffer = stream[n:]
        return stream[:n]

    def uniform(self, n: int, low: float = 0.0, high: float = 1.0) -> np.ndarray:
        """Doubles in the open interval (low, high)"""
        raw = self.next_u64(n)
        unit = ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _TWO_POW_MINUS_53
        return low + (high - low) * unit

    def uniform_scalar(self, low: float, high: float) -> float:
        return float(self.uniform(1, low, high)[0])

    def normal(self, n: int) -> np.ndarray:
        """Standard normal draws by the Box-Muller transform"""
        pairs = (n + 1) // 2
        u = self.uniform(2 * pairs)
        u1, u2 = u[0::2], u[1::2]
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * math.pi * u2
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(angle)
        out[1::2] = radius * np.sin(angle)
        return out[:n]

    def integers(self, high: int, n: int) -> np.ndarray:
        """Integers in [0, high)"""
        values = np.floor(self.uniform(n) * high).astype(np.int64)
        return np.minimum(values, high - 1)

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of range(n)"""
        order = np.arange(n)
        if n < 2:
            return order
        draws = self.uniform(n - 1)
        for i in range(n - 1, 0, -1):
            j = min(int(draws[n - 1 - i] * (i + 1)), i)
            order[i], order[j] = order[j], order[i]
        return order

    def choice(self, population: Sequence[int], k: int) -> List[int]:
        """k distinct items, in draw order"""
        order = self.permutation(len(population))
        return [population[i] for i in order[:k]]
