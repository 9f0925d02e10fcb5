# src/midicoth/models/match.py
from __future__ import annotations

from typing import Dict, NamedTuple, Optional

import numpy as np

from ..config import (ALPHABET, MATCH_BASE_CONF, MATCH_BLEND_CAP, MATCH_BLEND_SCALE, MATCH_INITIAL_SLOTS,
                      MATCH_LENGTHS, MATCH_STREAK_BASE, MATCH_STREAK_STEP, MATCH_W_CAP)
from ..core.distribution import Distribution, mix
from ..core.hashing import OpenAddressTable, fnv1a
from .base import BlendLayer, History


class MatchPrediction(NamedTuple):
    predicted: int      # byte that followed the earlier occurrence
    weight: float       # w in [0, 0.96]
    length: int         # context length that hit


def match_weight(length: int, streak: int) -> float:
    # w = min(c_base(l) * (0.65 + 0.04 * streak), 0.96)
    return min(MATCH_BASE_CONF[length] * (MATCH_STREAK_BASE + MATCH_STREAK_STEP * streak), MATCH_W_CAP)


def match_distribution(predicted: int, w: float) -> Distribution:
    p = np.full(ALPHABET, (1.0 - w) / (ALPHABET - 1), dtype=np.float64)
    p[predicted] = w
    return p


class MatchModel(BlendLayer):
    """
    Long-range repetition predictor.

    For each context length l in {16, 12, 8, 6, 4} a hash table maps the
    FNV-1a hash of an l-byte context to the position of its last byte in
    `history`; the byte after that position is the prediction. The longest
    length that hits wins. `streak` counts consecutive correct predictions
    and raises the weight.
    """

    def __init__(self) -> None:
        self.history = bytearray()
        self.tables: Dict[int, OpenAddressTable[int]] = {
            n: OpenAddressTable(MATCH_INITIAL_SLOTS) for n in MATCH_LENGTHS
        }
        self.streak = 0
        self.last_predicted: Optional[int] = None
        self._suffix: Dict[int, int] = {}      # length -> hash of the current last `length` bytes
        self._suffix_at = -1

    def name(self) -> str:
        return "match"

    def _suffix_hash(self, n: int) -> int:
        hist = self.history
        size = len(hist)
        if self._suffix_at != size:
            self._suffix.clear()
            self._suffix_at = size
        h = self._suffix.get(n)
        if h is None:
            h = self._suffix[n] = fnv1a(hist[size - n:])
        return h

    def predict(self) -> Optional[MatchPrediction]:
        hist = self.history
        size = len(hist)
        for n in MATCH_LENGTHS:
            if n > size:
                continue
            pos = self.tables[n].get(self._suffix_hash(n))
            if pos is not None and pos + 1 < size:
                return MatchPrediction(hist[pos + 1], match_weight(n, self.streak), n)
        return None

    def blend(self, d: Distribution, history: History = None) -> Distribution:
        pred = self.predict()
        if pred is None:
            self.last_predicted = None
            return d
        self.last_predicted = pred.predicted
        w_m = min(pred.weight * MATCH_BLEND_SCALE, MATCH_BLEND_CAP)
        return mix(d, match_distribution(pred.predicted, pred.weight), w_m)

    def update(self, history: History, observed: int) -> None:
        # streak only survives a correct prediction
        if self.last_predicted is not None and self.last_predicted == observed:
            self.streak += 1
        else:
            self.streak = 0
        self.last_predicted = None

        hist = self.history
        end = len(hist)                     # where `observed` lands
        # context = the n bytes before `observed`, its last byte at end - 1
        keys = [(n, self._suffix_hash(n)) for n in MATCH_LENGTHS if n <= end]
        hist.append(observed)
        for n, key in keys:
            self.tables[n].put(key, end - 1)

    def digest_into(self, h) -> None:
        h.update(bytes(self.history))
        h.update(self.streak.to_bytes(8, "little"))
        for n in MATCH_LENGTHS:
            for key, pos in self.tables[n].items():
                h.update(key.to_bytes(8, "little"))
                h.update(pos.to_bytes(8, "little"))
