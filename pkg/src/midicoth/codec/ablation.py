# src/midicoth/codec/ablation.py
from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass
from typing import Dict, List

from ..config import TWEEDIE_STEPS, PipelineConfig
from ..errors import CorruptStreamError
from .pipeline import compress, decompress

log = logging.getLogger(__name__)


@dataclass
class AblationRow:
    label: str
    size: int           # container bytes, header included
    ratio: float        # size / input size
    bpb: float          # bits per input byte
    delta_pct: float    # size reduction against the previous row, percent
    seconds: float

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def layer_bit_accounting(data: bytes, tweedie_steps: int = TWEEDIE_STEPS,
                         verify: bool = False) -> List[AblationRow]:
    """Compress `data` once per cascade configuration (Base PPM, +M, ... +M+W+H+Tweedie)."""
    rows: List[AblationRow] = []
    n = len(data)
    prev = None
    for cfg in PipelineConfig.cascade(tweedie_steps):
        t0 = time.perf_counter()
        container = compress(data, cfg)
        seconds = time.perf_counter() - t0
        if verify and decompress(container) != data:
            raise CorruptStreamError(f"{cfg.label()}: roundtrip mismatch")
        size = len(container)
        delta = (prev - size) / prev * 100.0 if prev else 0.0
        rows.append(AblationRow(cfg.label(), size, size / n if n else 0.0,
                                size * 8.0 / n if n else 0.0, delta, seconds))
        log.info("%-16s %10d bytes  %+6.2f%%  %.1fs", cfg.label(), size, delta, seconds)
        prev = size
    return rows


def total_improvement(rows: List[AblationRow]) -> float:
    """Percent saved by the last row against the first."""
    if not rows or not rows[0].size:
        return 0.0
    return (rows[0].size - rows[-1].size) / rows[0].size * 100.0
