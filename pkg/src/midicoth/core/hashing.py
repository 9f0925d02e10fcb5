# src/midicoth/core/hashing.py
from __future__ import annotations

import logging
from typing import Callable, Generic, Iterator, List, Optional, Tuple, TypeVar

from ..config import MAX_LOAD

# https://en.wikipedia.org/wiki/Fowler%E2%80%93Noll%E2%80%93Vo_hash_function#FNV_offset_basis
FNV_OFFSET_BASIS = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = 0xFFFFFFFFFFFFFFFF

log = logging.getLogger(__name__)

V = TypeVar("V")


def fnv1a(data: bytes, h: int = FNV_OFFSET_BASIS) -> int:
    """FNV-1a/64 of `data`, optionally continuing from a previous hash `h`."""
    for b in data:
        h = ((h ^ b) * FNV_PRIME) & MASK64
    return h


def suffix_hashes(history: bytes | bytearray, lengths: Tuple[int, ...]) -> List[Optional[int]]:
    """fnv1a of the last `n` bytes of history for each n in `lengths`.

    None where the history is shorter than n.
    """
    size = len(history)
    return [fnv1a(history[size - n:]) if n <= size else None for n in lengths]


class OpenAddressTable(Generic[V]):
    """64-bit key -> value map, open addressing with linear probing.

    Keys are context hashes; the table stores no key bytes, so two contexts
    with equal hashes share a slot (deterministic on both coder sides).
    Capacity is a power of two and doubles once occupancy would exceed
    MAX_LOAD.
    """

    __slots__ = ("_keys", "_vals", "_mask", "_count")

    def __init__(self, capacity: int = 1024) -> None:
        if capacity < 2 or capacity & (capacity - 1):
            raise ValueError("capacity must be a power of two >= 2")
        self._keys: List[Optional[int]] = [None] * capacity
        self._vals: List[Optional[V]] = [None] * capacity
        self._mask = capacity - 1
        self._count = 0

    def __len__(self) -> int:
        return self._count

    @property
    def capacity(self) -> int:
        return self._mask + 1

    def _slot(self, key: int) -> int:
        # index of `key`, or of the empty slot where it would go
        keys, mask = self._keys, self._mask
        i = key & mask
        while True:
            k = keys[i]
            if k is None or k == key:
                return i
            i = (i + 1) & mask

    def get(self, key: int) -> Optional[V]:
        return self._vals[self._slot(key)]

    def __contains__(self, key: int) -> bool:
        return self._keys[self._slot(key)] is not None

    def put(self, key: int, value: V) -> None:
        """Insert or overwrite."""
        i = self._slot(key)
        if self._keys[i] is None:
            if (self._count + 1) > MAX_LOAD * self.capacity:
                self._grow()
                i = self._slot(key)
            self._keys[i] = key
            self._count += 1
        self._vals[i] = value

    def get_or_insert(self, key: int, factory: Callable[[], V]) -> V:
        i = self._slot(key)
        val = self._vals[i]
        if self._keys[i] is None:
            val = factory()
            self.put(key, val)
        return val

    def _grow(self) -> None:
        old = list(self.items())
        capacity = self.capacity * 2
        log.debug("table grew to %d slots (%d keys)", capacity, self._count)
        self._keys = [None] * capacity
        self._vals = [None] * capacity
        self._mask = capacity - 1
        for key, val in old:
            i = self._slot(key)
            self._keys[i] = key
            self._vals[i] = val

    def items(self) -> Iterator[Tuple[int, V]]:
        # slot order, which is identical on encoder and decoder
        for k, v in zip(self._keys, self._vals):
            if k is not None:
                yield k, v
