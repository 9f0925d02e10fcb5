# src/midicoth/models/highctx.py
from __future__ import annotations

from typing import Dict, List, NamedTuple, Optional

import numpy as np

from ..config import (ALPHABET, HCTX_BLEND_CAP, HCTX_BLEND_SCALE, HCTX_CONF_RAMP, HCTX_COUNT_LIMIT,
                      HCTX_INITIAL_SLOTS, HCTX_MIN_TOTAL, HCTX_ORDERS, HCTX_SMOOTHING)
from ..core.distribution import Distribution, mix
from ..core.hashing import OpenAddressTable, suffix_hashes
from .base import BlendLayer, History


class HighCtxEntry:
    """Sparse counts of the bytes seen after one order-5..8 context."""

    __slots__ = ("counts", "total")

    def __init__(self) -> None:
        self.counts: Dict[int, int] = {}
        self.total = 0

    def add(self, b: int) -> None:
        c = self.counts.get(b, 0) + 1
        self.counts[b] = c
        self.total += 1
        if c >= HCTX_COUNT_LIMIT:
            self.halve()

    def halve(self) -> None:
        self.counts = {b: c >> 1 for b, c in self.counts.items() if c >> 1}
        self.total = sum(self.counts.values())


class HighCtxPrediction(NamedTuple):
    dist: Distribution
    confidence: float
    order: int


def order_factor(order: int) -> float:
    # 0.4 at order 5 up to 0.7 at order 8
    return 0.4 + 0.1 * (order - 5)


def sharp_distribution(entry: HighCtxEntry, eps: float = HCTX_SMOOTHING) -> Distribution:
    p = np.full(ALPHABET, eps, dtype=np.float64)
    for b, c in entry.counts.items():
        p[b] += c
    return p / (entry.total + ALPHABET * eps)


class HighCtxModel(BlendLayer):
    """
    Orders 5..8 with near-zero smoothing. Only the highest order whose
    context has at least HCTX_MIN_TOTAL observations contributes, so a
    deterministic long context passes through almost unblurred.
    """

    def __init__(self) -> None:
        self.tables: Dict[int, OpenAddressTable[HighCtxEntry]] = {
            k: OpenAddressTable(HCTX_INITIAL_SLOTS) for k in HCTX_ORDERS
        }
        self._hash_src: Optional[History] = None
        self._hash_len = -1
        self._hashes: List[Optional[int]] = []

    def name(self) -> str:
        return "highctx"

    def context_hashes(self, history: History) -> List[Optional[int]]:
        # one per HCTX_ORDERS entry, reused by the update() that follows predict()
        if history is not self._hash_src or len(history) != self._hash_len:
            self._hashes = suffix_hashes(history, HCTX_ORDERS)
            self._hash_src, self._hash_len = history, len(history)
        return self._hashes

    def predict(self, history: History) -> Optional[HighCtxPrediction]:
        for k, key in zip(HCTX_ORDERS, self.context_hashes(history)):
            if key is None:
                continue
            entry = self.tables[k].get(key)
            if entry is None or entry.total < HCTX_MIN_TOTAL:
                continue
            n = entry.total
            conf = (n - HCTX_MIN_TOTAL) / (n + HCTX_CONF_RAMP) * order_factor(k)
            return HighCtxPrediction(sharp_distribution(entry), conf, k)
        return None

    def blend(self, d: Distribution, history: History) -> Distribution:
        pred = self.predict(history)
        if pred is None:
            return d
        w_h = min(pred.confidence * HCTX_BLEND_SCALE, HCTX_BLEND_CAP)
        return mix(d, pred.dist, w_h)

    def update(self, history: History, observed: int) -> None:
        for k, key in zip(HCTX_ORDERS, self.context_hashes(history)):
            if key is not None:
                self.tables[k].get_or_insert(key, HighCtxEntry).add(observed)

    def digest_into(self, h) -> None:
        for k in HCTX_ORDERS:
            for key, entry in self.tables[k].items():
                h.update(key.to_bytes(8, "little"))
                h.update(repr(sorted(entry.counts.items())).encode())
