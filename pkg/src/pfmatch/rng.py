"""Deterministic pseudorandom numbers via the SplitMix64 mixing construction.

Every randomized routine in this package draws from this generator so that a
single integer seed reproduces identical reports on any platform and Python
version.  The construction is the standard SplitMix64 sequence: the state
advances by the odd constant 0x9E3779B97F4A7C15 and each output is finalized
with two xor-shift-multiply rounds.  All arithmetic is modulo 2^64.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """64-bit mixing generator with reproducible integer helpers."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return (z ^ (z >> 31)) & MASK64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] (inclusive) by modular reduction.

        The modulo bias is astronomically small for the tiny ranges used here
        and, more importantly, the same on every platform.
        """
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        return lo + self.next_u64() % span

    def nonzero_randint(self, lo: int, hi: int) -> int:
        """Like randint but rerolls zero (range must contain a nonzero value)."""
        if lo == 0 and hi == 0:
            raise ValueError("range contains only zero")
        while True:
            value = self.randint(lo, hi)
            if value != 0:
                return value

    def distinct_ints(self, count: int, lo: int, hi: int) -> list[int]:
        """`count` pairwise distinct integers from [lo, hi]."""
        if hi - lo + 1 < count:
            raise ValueError("range too small for distinct draw")
        seen: list[int] = []
        while len(seen) < count:
            value = self.randint(lo, hi)
            if value not in seen:
                seen.append(value)
        return seen

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
