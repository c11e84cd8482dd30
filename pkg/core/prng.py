"""Seeded pseudorandom source.

Uses numpy's PCG64 bit generator (128-bit state, period 2**128, seeded from a
64-bit integer). The algorithm is fixed: model artifacts record only the seed.
"""
import numpy as np

PRNG_ALGORITHM = "PCG64"


class Prng:
    """Deterministic uniform/normal stream; equal seeds give equal streams."""

    def __init__(self, seed: int):
        if not 0 <= int(seed) < 2 ** 64:
            raise ValueError(f"seed must fit in 64 bits, got {seed}")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, size=None):
        """Draws in [0, 1)."""
        return self._gen.random(size)

    def normal(self, sigma: float, size):
        return self._gen.normal(0.0, sigma, size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)
