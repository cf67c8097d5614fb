"""Portable, fully specified 64-bit random generator (splitmix64).

The experiment harness must reproduce byte-identical output across platforms
and languages, so the generator is pinned down to the last constant instead
of delegating to a library implementation whose stream could change.

State advance (all arithmetic mod 2^64):

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)

``z`` is the 64-bit output. Uniform doubles take the top 53 bits:
``(z >> 11) * 2^-53`` in [0, 1). Substream derivation for parallel cells
absorbs ``(index + 1) * 0x9E3779B97F4A7C15`` into the state and advances
once, which keeps cell streams independent of scheduling order.

Gaussians use Box-Muller on (1 - u1, u2) so the log argument is never zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass
class SplitMix64:
    """Deterministic stream of 64-bit words / doubles / Gaussians."""

    state: int

    def __post_init__(self) -> None:
        self.state &= _MASK
        # Box-Muller produces pairs; cache the second one.
        self._spare: float | None = None

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK
        return z ^ (z >> 31)

    def next_uniform(self) -> float:
        """Uniform double in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_gaussian(self) -> float:
        if self._spare is not None:
            g, self._spare = self._spare, None
            return g
        u1 = self.next_uniform()
        u2 = self.next_uniform()
        radius = math.sqrt(-2.0 * math.log(1.0 - u1))
        angle = 2.0 * math.pi * u2
        self._spare = radius * math.sin(angle)
        return radius * math.cos(angle)

    def substream(self, index: int) -> "SplitMix64":
        """Independent child stream for cell `index` (schedule-invariant)."""
        if index < 0:
            raise ValueError("substream index must be nonnegative")
        child = SplitMix64((self.state + (index + 1) * _GOLDEN) & _MASK)
        child.next_u64()
        return child


def complex_sphere_point(rng: SplitMix64, dim: int, radius: float) -> list[complex]:
    """Uniform point on the complex sphere of the given radius.

    Gaussian normalize-and-scale; the all-zero draw is impossible because the
    Box-Muller radius is strictly positive.
    """
    if dim < 1:
        raise ValueError("dim must be positive")
    if radius <= 0:
        raise ValueError("radius must be positive")
    parts = [complex(rng.next_gaussian(), rng.next_gaussian()) for _ in range(dim)]
    norm = math.sqrt(sum(abs(p) ** 2 for p in parts))
    return [p * (radius / norm) for p in parts]
