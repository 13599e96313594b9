"""Reproducible 64-bit linear congruential generator.

Multiplier and increment are Knuth's MMIX constants.  Outputs use the top
bits of the state, whose period is the full 2^64.
"""

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class LCG64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state * MULTIPLIER + INCREMENT) & MASK
        return self.state

    def randbelow(self, n: int) -> int:
        """Integer in [0, n); modulo bias is below 2^-32 for n < 2^21."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next() >> 11) % n
