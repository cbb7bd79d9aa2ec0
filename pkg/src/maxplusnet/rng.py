"""Counter-mode splitmix64 for reproducible service-time streams.

Samples are pure functions of (seed, index): the k-th draw of a stream
can be evaluated in isolation, which is what lets round-routing index
remapping address a single source stream at arbitrary positions, and
what makes runs bit-exact across platforms.
"""

import math

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def stream_u64(seed: int, k: int) -> int:
    """k-th 64-bit output of the stream keyed by ``seed`` (k >= 1)."""
    return mix64((seed + k * _GAMMA) & _MASK)


def stream_unit(seed: int, k: int) -> float:
    """k-th draw in the open interval (0, 1)."""
    return ((stream_u64(seed, k) >> 11) + 0.5) * 2.0 ** -53


def stream_uniform(seed: int, k: int, lo: float, hi: float) -> float:
    return lo + (hi - lo) * stream_unit(seed, k)


def stream_exponential(seed: int, k: int, rate: float) -> float:
    return -math.log(1.0 - stream_unit(seed, k)) / rate
