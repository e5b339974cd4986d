"""Deterministic random numbers via SplitMix64.

SplitMix64 is a 64-bit permutation-based generator (Steele, Lea & Flood,
"Fast splittable pseudorandom number generators", OOPSLA 2014). It is used
instead of a platform RNG so that seeded batches reproduce bit-exactly
everywhere: the state update is a 64-bit counter increment and the output
function is a fixed sequence of xor-shift-multiply steps on that counter.

Independent streams for batch work are derived from ``(seed, index)`` by
running the output mix over the seed and offsetting by the golden-gamma
increment, which is the splitting construction the generator was designed
for.
"""

from __future__ import annotations

from math import log

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class SplitMix64:
    """Scalar SplitMix64 generator with a 64-bit state."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_raw(self) -> int:
        """Next 64-bit output word."""
        self._state = (self._state + _GOLDEN) & _MASK
        return _mix(self._state)

    def uniform(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_raw() >> 11) * 2.0**-53

    def uniform_in(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()

    def exponential(self) -> float:
        """Standard exponential variate (inverse CDF of 1 - U)."""
        return -log(1.0 - self.uniform())


def stream(seed: int, index: int) -> SplitMix64:
    """Independent generator for sample ``index`` of a batch seeded by ``seed``.

    The initial state is ``mix(mix(seed) + (index + 1) * golden)``; distinct
    indices land on well-separated points of the underlying Weyl sequence.
    """
    return SplitMix64(_mix((_mix(seed & _MASK) + ((index + 1) * _GOLDEN)) & _MASK))
