"""Seedable, splittable random streams used by every sampling routine.

The generator is SplitMix64: a 64-bit counter advanced by the golden-ratio
increment and pushed through an avalanche finalizer.  Substreams are keyed
by ``(seed, index)``, so sample ``i`` of a Monte Carlo run always draws
from its own stream regardless of how samples are scheduled across
workers.  The compiled kernels implement exactly the same arithmetic,
which keeps results bit-for-bit identical between backends.
"""

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_STREAM_SALT = 0x1F123BB5
_INV_2POW53 = 2.0**-53


def mix64(z: int) -> int:
    """SplitMix64 avalanche finalizer on a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_state(seed: int, index: int) -> int:
    """Initial counter of substream ``index`` under ``seed``."""
    return mix64((seed & MASK64) ^ mix64((index * GOLDEN + _STREAM_SALT) & MASK64))


class Stream:
    """One substream of the seeded generator.

    Draws advance the counter by the golden-ratio increment; distinct
    substreams start at avalanche-mixed positions, so overlap between the
    short per-sample draw sequences is negligible.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int, index: int = 0):
        self.state = stream_state(seed, index)

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def next_double(self) -> float:
        """Uniform in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * _INV_2POW53

    def bernoulli(self, p: float) -> bool:
        return self.next_double() < p

    def randrange(self, n: int) -> int:
        # Modulo bias is ~n/2^64, irrelevant at the sizes used here.
        return self.next_u64() % n
