from dataclasses import dataclass, field

import numpy as np


@dataclass
class Rng:
    """
    Seeded random stream backed by numpy's PCG64 bit generator.

    PCG64 output for a given seed is fixed by numpy across platforms, so every
    stochastic step of the pipeline is reproducible from the 64-bit seed alone.
    Independent sub-streams come from :meth:`child`.
    """
    seed: int
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"Seed must fit in 64 unsigned bits, got {self.seed}")
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def child(self, *keys: int) -> "Rng":
        """Derive an independent stream keyed by ``keys``; the parent is not advanced."""
        state = np.random.SeedSequence([self.seed, *keys]).generate_state(1, dtype=np.uint64)
        return Rng(int(state[0]))

    def random(self, shape: tuple[int, ...], dtype=np.float32) -> np.ndarray:
        return self.generator.random(shape, dtype=dtype)

    def uniform(self, low: float, high: float, shape: tuple[int, ...]) -> np.ndarray:
        return self.generator.uniform(low, high, size=shape)

    def normal(self, scale: float, shape: tuple[int, ...]) -> np.ndarray:
        return self.generator.normal(0.0, scale, size=shape)

    def integers(self, low: int, high: int, size: int | None = None):
        return self.generator.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self.generator.permutation(n)
