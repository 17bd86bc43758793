from typing import Union
from zlib import crc32

from numpy.random import PCG64, Generator, SeedSequence

Key = Union[int, str]


def _entropy(key: Key, /) -> int:
    # spawn keys must be non-negative
    if isinstance(key, str) or int(key) < 0:
        return crc32(str(key).encode())
    return int(key)


def derive_seed(master: int, /, *keys: Key) -> int:
    """Return a 64-bit seed that depends only on ``master`` and ``keys``."""
    sequence = SeedSequence(master, spawn_key=tuple(map(_entropy, keys)))
    return int(sequence.generate_state(1, dtype='uint64')[0])


def make_rng(master: int, /, *keys: Key) -> Generator:
    """A ``PCG64`` generator on the stream ``(master, *keys)``."""
    return Generator(
        PCG64(SeedSequence(master, spawn_key=tuple(map(_entropy, keys))))
    )
