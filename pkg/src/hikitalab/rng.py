"""Deterministic randomness: everything flows from one 64-bit seed.

Mersenne Twister via random.Random is stable across platforms and Python
versions for the methods used here, so fixed seeds give byte-identical
outputs.
"""

import random

from .scalars import QQ


class SeededRng:
    """Named deterministic generator over small exact rationals."""

    def __init__(self, seed):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._r = random.Random(self.seed)

    def integer(self, lo, hi):
        return self._r.randint(lo, hi)

    def rational(self, bound=9):
        """A small integer as an exact rational, uniform on [-bound, bound]."""
        return QQ(self._r.randint(-bound, bound))

    def nonzero_rational(self, bound=9):
        while True:
            q = self.rational(bound)
            if q != 0:
                return q

    def shuffle(self, items):
        self._r.shuffle(items)
        return items

    def choice(self, items):
        return self._r.choice(items)

    def derive(self, label):
        """Independent child stream; label keeps siblings distinct."""
        return SeededRng(self.seed * 1_000_003 + 7919 * (label + 1))
