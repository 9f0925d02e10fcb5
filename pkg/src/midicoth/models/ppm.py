# src/midicoth/models/ppm.py
"""
Base predictor: order-0..4 context models with a Jeffreys prior,
Method-C escapes and PPMC exclusion.

Each order hands its non-escape mass to every symbol no higher order
claimed, in proportion to its stored count (real count + 0.5), so an
isolated record predicts (n*q(s) + 0.5) / (n + 128): the prior-diluted
form the denoiser undoes. Escapes use the real counts.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from ..config import ALPHABET, JEFFREYS, PPM_INITIAL_SLOTS, PPM_MAX_ORDER, PPM_STORED_CONDITIONAL, PRIOR_MASS
from ..core.distribution import Distribution, PredictionMeta
from ..core.hashing import OpenAddressTable, suffix_hashes
from .base import History


ORDERS = tuple(range(PPM_MAX_ORDER + 1))   # (0, 1, 2, 3, 4)


class ContextRecord:
    __slots__ = ("counts", "total", "distinct")

    def __init__(self) -> None:
        self.counts = np.full(ALPHABET, JEFFREYS, dtype=np.float64)
        self.total = PRIOR_MASS        # 128 + number of updates, exactly
        self.distinct = 0              # symbols with counts > 0.5


class ContextStore:
    """One open-addressing table per order, keyed by the context's FNV-1a hash."""

    def __init__(self, capacity: int = PPM_INITIAL_SLOTS) -> None:
        self.tables: List[OpenAddressTable[ContextRecord]] = [
            OpenAddressTable(capacity) for _ in ORDERS
        ]

    def lookup(self, order: int, key: int) -> Optional[ContextRecord]:
        return self.tables[order].get(key)

    def find_or_create(self, order: int, key: int) -> ContextRecord:
        return self.tables[order].get_or_insert(key, ContextRecord)

    def __len__(self) -> int:
        return sum(len(t) for t in self.tables)


def escape_prob(distinct: int, real_total: float) -> float:
    """Method C: d / (n + d); an empty context always escapes."""
    if real_total <= 0:
        return 1.0
    return distinct / (real_total + distinct)


class PPMModel:
    def __init__(self, stored_conditional: bool = PPM_STORED_CONDITIONAL) -> None:
        self.store = ContextStore()
        self.stored_conditional = stored_conditional
        self._hash_src: Optional[History] = None
        self._hash_len = -1
        self._hashes: List[Optional[int]] = []

    def context_hashes(self, history: History) -> List[Optional[int]]:
        # index = order; None where fewer than `order` bytes exist.
        # predict() and update() see the same (append-only) history, so hash it once
        if history is not self._hash_src or len(history) != self._hash_len:
            self._hashes = suffix_hashes(history, ORDERS)
            self._hash_src, self._hash_len = history, len(history)
        return self._hashes

    def predict(self, history: History) -> Tuple[Distribution, PredictionMeta]:
        hashes = self.context_hashes(history)
        out = np.zeros(ALPHABET, dtype=np.float64)
        keep = np.ones(ALPHABET, dtype=np.float64)   # 0.0 once a higher order has seen the symbol
        n_keep = ALPHABET
        mass = 1.0                     # product of escapes taken so far
        meta = PredictionMeta()

        for order in reversed(ORDERS):
            key = hashes[order]
            if key is None:
                continue
            rec = self.store.lookup(order, key)
            if rec is None:
                continue
            if meta.order < 0:
                meta = PredictionMeta(confidence=rec.total, order=order)

            stored = rec.counts * keep
            stored_sum = float(stored.sum())
            # half-integer sums, so n is exact
            n = stored_sum - JEFFREYS * n_keep
            seen = stored > JEFFREYS
            d = int(np.count_nonzero(seen))
            esc = escape_prob(d, n)
            if esc < 1.0:
                if self.stored_conditional:
                    out += (mass * (1.0 - esc) / stored_sum) * stored
                else:
                    out += (mass * (1.0 - esc) / n) * (stored - JEFFREYS * keep)
            mass *= esc
            if d:
                keep[seen] = 0.0
                n_keep -= d

        # leftover mass goes uniformly to symbols no order has claimed
        if n_keep:
            out += (mass / n_keep) * keep
        else:
            out += mass / ALPHABET
        return out, meta

    def update(self, history: History, observed: int) -> None:
        hashes = self.context_hashes(history)
        for order in ORDERS:
            key = hashes[order]
            if key is None:
                break
            rec = self.store.find_or_create(order, key)
            if rec.counts[observed] == JEFFREYS:
                rec.distinct += 1
            rec.counts[observed] += 1.0
            rec.total += 1.0

    def digest_into(self, h) -> None:
        for table in self.store.tables:
            for key, rec in table.items():
                h.update(key.to_bytes(8, "little"))
                h.update(rec.counts.tobytes())
                h.update(np.float64(rec.total).tobytes())
