# src/midicoth/models/word.py
"""
Word-completion layer.

A byte trie over the words seen so far predicts the next letter of the
word being typed; between words, a bigram table keyed by the previous
word predicts the first letter of the next one. Words are maximal runs
of ASCII letters (case kept); the byte that ends a word is counted as a
continuation of the word's node, so the trie also learns where words stop.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import (ALPHABET, WORD_BLEND_CAP, WORD_BLEND_SCALE, WORD_CONF_RAMP, WORD_INITIAL_SLOTS,
                      WORD_MAX_LEN, WORD_NODE_BUDGET, WORD_SMOOTHING)
from ..core.distribution import Distribution, mix
from ..core.hashing import OpenAddressTable, fnv1a
from .base import BlendLayer, History

_ALPHA = np.zeros(ALPHABET, dtype=bool)
_ALPHA[ord("A"):ord("Z") + 1] = True
_ALPHA[ord("a"):ord("z") + 1] = True


def is_word_byte(b: int) -> bool:
    return bool(_ALPHA[b])


def smoothed(counts: Dict[int, int], total: int, eps: float = WORD_SMOOTHING) -> Distribution:
    # (count + eps) / (total + 256 * eps)
    p = np.full(ALPHABET, eps, dtype=np.float64)
    for b, c in counts.items():
        p[b] += c
    return p / (total + ALPHABET * eps)


class WordTrie:
    """Node pool: children, continuation counts and visit count per node (root = 0)."""

    def __init__(self, node_budget: int = WORD_NODE_BUDGET) -> None:
        self.node_budget = node_budget
        self.children: List[Dict[int, int]] = [{}]
        self.conts: List[Dict[int, int]] = [{}]
        self.visits: List[int] = [0]
        self.walks = 0                 # number of root-to-node walks, for cache checks

    def __len__(self) -> int:
        return len(self.children)

    def walk(self, word: bytes) -> Optional[int]:
        """Node reached by spelling `word` from the root, None if off-trie."""
        self.walks += 1
        node = 0
        for b in word:
            node = self.children[node].get(b)
            if node is None:
                return None
        return node

    def child(self, node: int, b: int) -> Optional[int]:
        # existing or new child; None once the budget is spent
        kid = self.children[node].get(b)
        if kid is None and len(self.children) < self.node_budget:
            kid = len(self.children)
            self.children.append({})
            self.conts.append({})
            self.visits.append(0)
            self.children[node][b] = kid
        return kid

    def count(self, node: int, b: int) -> None:
        conts = self.conts[node]
        conts[b] = conts.get(b, 0) + 1
        self.visits[node] += 1


@dataclass
class BigramEntry:
    counts: Dict[int, int] = field(default_factory=dict)   # first byte of the next word
    total: int = 0


@dataclass
class WordPrediction:
    dist: Distribution
    confidence: float
    node: Optional[int]        # trie node of the current word (also cached when off-trie)


class WordModel(BlendLayer):
    def __init__(self, node_budget: int = WORD_NODE_BUDGET) -> None:
        self.trie = WordTrie(node_budget)
        self.bigrams: OpenAddressTable[BigramEntry] = OpenAddressTable(WORD_INITIAL_SLOTS)
        self.frequencies: OpenAddressTable[int] = OpenAddressTable(WORD_INITIAL_SLOTS)
        self.current_word = bytearray()
        self.prev_word_hash: Optional[int] = None
        # node found by the last predict(); update() consumes it instead of walking again
        self._cached: Optional[Tuple[int, Optional[int]]] = None   # (len(current_word), node)

    def name(self) -> str:
        return "word"

    def _current_node(self) -> Optional[int]:
        if not self.current_word:
            return 0
        if self._cached is not None and self._cached[0] == len(self.current_word):
            return self._cached[1]
        node = self.trie.walk(self.current_word)
        self._cached = (len(self.current_word), node)
        return node

    def predict(self) -> Optional[WordPrediction]:
        if self.current_word:
            node = self._current_node()
            if node is None:
                return None
            visits = self.trie.visits[node]
            if visits == 0:
                return None
            dist = smoothed(self.trie.conts[node], visits)
            return WordPrediction(dist, visits / (visits + WORD_CONF_RAMP), node)

        if self.prev_word_hash is None:
            return None
        entry = self.bigrams.get(self.prev_word_hash)
        if entry is None or entry.total == 0:
            return None
        dist = smoothed(entry.counts, entry.total)
        return WordPrediction(dist, entry.total / (entry.total + WORD_CONF_RAMP), 0)

    def blend(self, d: Distribution, history: History = None) -> Distribution:
        pred = self.predict()
        if pred is None:
            return d
        c_w = min(max(pred.confidence, 0.0), 1.0)
        w_w = min(c_w * WORD_BLEND_SCALE, WORD_BLEND_CAP)
        return mix(d, pred.dist, w_w)

    def update(self, history: History, observed: int) -> None:
        node = self._current_node()
        self._cached = None

        if _ALPHA[observed]:
            if not self.current_word and self.prev_word_hash is not None:
                entry = self.bigrams.get_or_insert(self.prev_word_hash, BigramEntry)
                entry.counts[observed] = entry.counts.get(observed, 0) + 1
                entry.total += 1
            if len(self.current_word) < WORD_MAX_LEN:
                if node is not None:
                    self.trie.count(node, observed)
                    node = self.trie.child(node, observed)
                self.current_word.append(observed)
            elif node is not None:
                # truncated: letters beyond the limit are counted at the last node
                self.trie.count(node, observed)
            self._cached = (len(self.current_word), node)
            return

        if self.current_word:
            if node is not None:
                self.trie.count(node, observed)      # word terminator
            key = fnv1a(self.current_word)
            self.frequencies.put(key, (self.frequencies.get(key) or 0) + 1)
            self.prev_word_hash = key
            self.current_word.clear()

    def word_count(self, word: bytes) -> int:
        """How many times `word` (truncated) has been completed."""
        return self.frequencies.get(fnv1a(word[:WORD_MAX_LEN])) or 0

    def digest_into(self, h) -> None:
        h.update(bytes(self.current_word))
        h.update((self.prev_word_hash or 0).to_bytes(8, "little"))
        h.update(len(self.trie).to_bytes(8, "little"))
        for kids, conts, visits in zip(self.trie.children, self.trie.conts, self.trie.visits):
            h.update(repr((sorted(kids.items()), sorted(conts.items()), visits)).encode())
        for key, entry in self.bigrams.items():
            h.update(key.to_bytes(8, "little"))
            h.update(repr(sorted(entry.counts.items())).encode())
        for key, count in self.frequencies.items():
            h.update(key.to_bytes(8, "little") + count.to_bytes(8, "little"))
