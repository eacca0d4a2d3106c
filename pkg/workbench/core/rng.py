"""Deterministic, splittable random source threaded through every randomized operation."""
import hashlib
import random
from typing import List, MutableSequence, Sequence, TypeVar

T = TypeVar("T")


class Rng:
    """
    Seeded random source.

    A single instance must not be shared between concurrent runs; call `split`
    to hand an independent stream to each worker or protocol run.

    Attributes:
        seed: The 64-bit seed this stream was created from.
    """

    def __init__(self, seed: int) -> None:
        self.seed = seed & 0xFFFF_FFFF_FFFF_FFFF
        self._random = random.Random(self.seed)
        self._children = 0

    def split(self, label: str = "") -> "Rng":
        """
        Derive an independent child stream.

        The child seed depends only on this stream's seed, the number of earlier
        splits and `label`, never on how many values were drawn in between.
        """
        self._children += 1
        material = f"{self.seed}:{self._children}:{label}".encode("utf-8")
        child_seed = int.from_bytes(hashlib.sha256(material).digest()[:8], "big")
        return Rng(child_seed)

    def randbelow(self, n: int) -> int:
        return self._random.randrange(n)

    def randrange(self, start: int, stop: int) -> int:
        return self._random.randrange(start, stop)

    def randint(self, a: int, b: int) -> int:
        return self._random.randint(a, b)

    def getrandbits(self, k: int) -> int:
        return self._random.getrandbits(k)

    def bit(self) -> int:
        return self._random.getrandbits(1)

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self._random.randrange(len(seq))]

    def shuffle(self, items: MutableSequence) -> None:
        # Fisher-Yates, drawing from this stream only
        for i in range(len(items) - 1, 0, -1):
            j = self._random.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample(self, population: Sequence[T], k: int) -> List[T]:
        return self._random.sample(list(population), k)
