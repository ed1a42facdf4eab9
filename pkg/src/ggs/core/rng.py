"""Deterministic 64-bit PRNG (splitmix64) used for all random playouts.

The generator is fixed so seeded runs are bit-exact across machines and
implementations: add 0x9E3779B97F4A7C15 to the state, then mix with
xor-shift 30 / multiply, xor-shift 27 / multiply, xor-shift 31.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class Prng:
    __slots__ = ("s",)

    def __init__(self, seed: int):
        self.s = seed & MASK64

    def next_u64(self) -> int:
        self.s = (self.s + _GAMMA) & MASK64
        z = self.s
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def uniform_index(self, n: int) -> int:
        """Unbiased-enough index in [0, n): high 64 bits of draw * n."""
        if n < 1:
            raise ValueError("n must be positive")
        return (self.next_u64() * n) >> 64
