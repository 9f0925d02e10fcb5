# src/midicoth/codec/ledger.py
"""
Per-stage bit accounting inside one compression run.

After every byte the pipeline hands over the distribution each stage
produced; the ledger charges -log2 p(observed) to that stage. Comparing
neighbouring stages gives each layer's marginal gain without a second
run, and the last two stages give the quantization overhead.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..config import FREQ_SCALE
from ..core.distribution import CumFreqTable, Distribution

STAGES = ("ppm", "match", "word", "highctx", "tweedie", "quantized")


@dataclass
class LedgerRow:
    stage: str
    bits: float
    bytes: float
    bpb: float
    gain_pct: float     # size reduction against the previous stage, percent


class BitLedger:
    def __init__(self) -> None:
        self.bits: Dict[str, float] = {s: 0.0 for s in STAGES}
        self.symbols = 0

    def charge(self, stages: Dict[str, Distribution], cum: CumFreqTable, observed: int) -> None:
        """`stages` holds the enabled stages' outputs; missing ones repeat the stage before them."""
        p: Optional[Distribution] = None
        for stage in STAGES[:-1]:
            p = stages.get(stage, p)
            self.bits[stage] += -math.log2(float(p[observed]))
        freq = int(cum[observed + 1]) - int(cum[observed])
        self.bits["quantized"] += -math.log2(freq / FREQ_SCALE)
        self.symbols += 1

    @property
    def quantization_overhead_bits(self) -> float:
        return self.bits["quantized"] - self.bits["tweedie"]

    def summary(self) -> List[LedgerRow]:
        rows: List[LedgerRow] = []
        prev: Optional[float] = None
        for stage in STAGES:
            bits = self.bits[stage]
            gain = 0.0 if not prev else (prev - bits) / prev * 100.0
            bpb = bits / self.symbols if self.symbols else 0.0
            rows.append(LedgerRow(stage, bits, bits / 8.0, bpb, gain))
            prev = bits
        return rows
