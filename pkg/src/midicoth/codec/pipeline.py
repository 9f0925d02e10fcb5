# src/midicoth/codec/pipeline.py
"""
Per-byte loop shared by compression and decompression.

    ppm.predict -> normalize -> match -> word -> highctx -> tweedie
    -> normalize -> 14-bit table -> code the byte -> update every model

Both directions call the same Pipeline.predict()/update() methods, so the
encoder and the decoder evaluate identical floating-point expressions in
identical order. Disabled layers are never constructed.
"""
from __future__ import annotations

import hashlib
import logging
from typing import BinaryIO, Dict, List, Optional, Union

from ..coding.arith import ArithmeticDecoder, ArithmeticEncoder
from ..config import PROGRESS_EVERY, PipelineConfig
from ..core.distribution import CumFreqTable, Distribution, normalize, probs_to_cumfreqs
from ..denoise.tweedie import TweedieDenoiser
from ..models.base import BlendLayer
from ..models.highctx import HighCtxModel
from ..models.match import MatchModel
from ..models.ppm import PPMModel
from ..models.word import WordModel
from .container import Container
from .ledger import BitLedger

log = logging.getLogger(__name__)


class Pipeline:
    def __init__(self, config: Optional[PipelineConfig] = None, ledger: bool = False) -> None:
        self.config = config or PipelineConfig()
        self.history = bytearray()
        self.ppm = PPMModel()
        self.layers: List[BlendLayer] = []
        if self.config.enable_match:
            self.layers.append(MatchModel())
        if self.config.enable_word:
            self.layers.append(WordModel())
        if self.config.enable_highctx:
            self.layers.append(HighCtxModel())
        self.tweedie = TweedieDenoiser(self.config.tweedie_steps) if self.config.enable_tweedie else None
        self.ledger = BitLedger() if ledger else None
        self._stages: Dict[str, Distribution] = {}

    def predict(self) -> CumFreqTable:
        """Cumulative table for the next byte."""
        hist = self.history
        d, meta = self.ppm.predict(hist)
        d = normalize(d)
        stages = {"ppm": d}
        for layer in self.layers:
            d = layer.blend(d, hist)
            stages[layer.name()] = d
        if self.tweedie is not None:
            d = self.tweedie.denoise(d, meta)
        d = normalize(d)
        if self.tweedie is not None:
            stages["tweedie"] = d
        if self.ledger is not None:
            self._stages = stages
        return probs_to_cumfreqs(d)

    def update(self, observed: int, cum: Optional[CumFreqTable] = None) -> None:
        """Teach every model the byte just coded, then extend the history."""
        if self.ledger is not None and cum is not None:
            self.ledger.charge(self._stages, cum, observed)
        hist = self.history
        self.ppm.update(hist, observed)
        for layer in self.layers:
            layer.update(hist, observed)
        if self.tweedie is not None:
            self.tweedie.record_outcome(observed)
        hist.append(observed)

    def state_digest(self) -> str:
        h = hashlib.sha256()
        h.update(bytes(self.history))
        self.ppm.digest_into(h)
        for layer in self.layers:
            h.update(layer.name().encode())
            layer.digest_into(h)
        if self.tweedie is not None:
            self.tweedie.digest_into(h)
        return h.hexdigest()

    def encode(self, data: bytes) -> bytes:
        enc = ArithmeticEncoder()
        total = len(data)
        for i, b in enumerate(data):
            cum = self.predict()
            enc.encode_symbol(cum, b)
            self.update(b, cum)
            if (i + 1) % PROGRESS_EVERY == 0:
                log.debug("encoded %d/%d bytes, %d bits out", i + 1, total, enc.bits_written)
        return enc.finish()

    def decode(self, payload: bytes, length: int) -> bytes:
        dec = ArithmeticDecoder(payload)
        out = bytearray()
        for i in range(length):
            cum = self.predict()
            b = dec.decode_symbol(cum)
            self.update(b, cum)
            out.append(b)
            if (i + 1) % PROGRESS_EVERY == 0:
                log.debug("decoded %d/%d bytes", i + 1, length)
        dec.check_end()
        return bytes(out)


def compress(data: bytes, config: Optional[PipelineConfig] = None) -> Container:
    config = config or PipelineConfig()
    payload = Pipeline(config).encode(data)
    log.debug("%s: %d -> %d bytes", config.label(), len(data), len(payload))
    return Container(config, len(data), payload)


def decompress(container: Union[Container, bytes]) -> bytes:
    if not isinstance(container, Container):
        container = Container.from_bytes(container)
    return Pipeline(container.config).decode(container.payload, container.original_length)


def compress_stream(reader: BinaryIO, writer: BinaryIO, config: Optional[PipelineConfig] = None) -> Container:
    # the header needs the length up front, so the input is read whole
    container = compress(reader.read(), config)
    writer.write(container.to_bytes())
    return container


def decompress_stream(reader: BinaryIO, writer: BinaryIO) -> int:
    data = decompress(reader.read())
    writer.write(data)
    return len(data)
