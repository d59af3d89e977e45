__all__ = ["get_rng", "name_key", "suite_rng", "batch_seed"]

import numbers
import zlib
from typing import Sequence, Union

import numpy as np

Seed = Union[numbers.Integral, Sequence[numbers.Integral]]


def _entropy(seed: Seed):
    if isinstance(seed, numbers.Integral):
        return int(seed)
    if isinstance(seed, (tuple, list)) and all(isinstance(s, numbers.Integral) for s in seed):
        return [int(s) for s in seed]
    raise TypeError(f"expected an integer (or sequence of integers) for arg `seed`, "
                    f"received type '{type(seed)}'")


def get_rng(seed: Seed) -> np.random.Generator:
    """Counter-based (Philox) `np.random.Generator` seeded through a
    `np.random.SeedSequence` built from `seed`.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(_entropy(seed))))


def name_key(name: str) -> int:
    """Stable 32-bit key of a string (CRC-32)."""
    return zlib.crc32(name.encode('utf-8'))


def suite_rng(seed_state: numbers.Integral, suite: str) -> np.random.Generator:
    """Generator for one suite within one batch; independent of the order in
    which suites run."""
    return get_rng([int(seed_state), name_key(suite)])


def batch_seed(seq: np.random.SeedSequence) -> int:
    """32-bit state word of the next child spawned from `seq`."""
    child, = seq.spawn(1)
    return int(child.generate_state(1, dtype=np.uint32)[0])
