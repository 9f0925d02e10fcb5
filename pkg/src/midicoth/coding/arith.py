# src/midicoth/coding/arith.py
"""
32-bit binary arithmetic coder (Witten/Neal/Cleary style) with E1/E2/E3
renormalization. Encoder and decoder narrow the interval with identical
integer arithmetic, so the same sequence of cumulative tables always
yields the same symbols on both sides.
"""
from __future__ import annotations

import numpy as np

from ..config import CODER_BITS, DECODER_SLACK_BITS, FREQ_SCALE
from ..core.distribution import CumFreqTable
from ..errors import CorruptStreamError, StreamExhaustedError

MAX_RANGE = (1 << CODER_BITS) - 1   # 0xFFFFFFFF
HALF = 1 << (CODER_BITS - 1)
QUARTER = 1 << (CODER_BITS - 2)
THREE_QUARTERS = 3 * QUARTER


class ArithmeticEncoder:
    """Encodes symbols into a bit-packed bytearray."""

    def __init__(self) -> None:
        self.low = 0
        self.high = MAX_RANGE
        self.pending_bits = 0          # E3 underflow counter
        self._buf = bytearray()
        self._cur_byte = 0
        self._bits_in_cur = 0
        self.bits_written = 0

    def _write_bit(self, bit: int) -> None:
        self._cur_byte = (self._cur_byte << 1) | bit
        self._bits_in_cur += 1
        self.bits_written += 1
        if self._bits_in_cur == 8:
            self._buf.append(self._cur_byte)
            self._cur_byte = 0
            self._bits_in_cur = 0

    def _output_bit(self, bit: int) -> None:
        self._write_bit(bit)
        # deferred E3 bits are the opposite of the bit just emitted
        for _ in range(self.pending_bits):
            self._write_bit(bit ^ 1)
        self.pending_bits = 0

    def encode_symbol(self, cum: CumFreqTable, symbol: int) -> None:
        rng = self.high - self.low + 1
        sym_lo = int(cum[symbol])
        sym_hi = int(cum[symbol + 1])
        self.high = self.low + (rng * sym_hi) // FREQ_SCALE - 1
        self.low = self.low + (rng * sym_lo) // FREQ_SCALE

        while True:
            if self.high < HALF:                                   # E1
                self._output_bit(0)
                self.low <<= 1
                self.high = (self.high << 1) | 1
            elif self.low >= HALF:                                 # E2
                self._output_bit(1)
                self.low = (self.low - HALF) << 1
                self.high = ((self.high - HALF) << 1) | 1
            elif self.low >= QUARTER and self.high < THREE_QUARTERS:  # E3
                self.pending_bits += 1
                self.low = (self.low - QUARTER) << 1
                self.high = ((self.high - QUARTER) << 1) | 1
            else:
                break
        assert self.high - self.low >= FREQ_SCALE, "arithmetic coder range collapsed"

    def finish(self) -> bytes:
        """Flush two disambiguating bits plus pending bits, pad to a byte."""
        self.pending_bits += 1
        self._output_bit(0 if self.low < QUARTER else 1)
        while self._bits_in_cur:
            self._write_bit(0)
        return bytes(self._buf)


class ArithmeticDecoder:
    """Mirror of ArithmeticEncoder; reads 0-bits past the end of the payload."""

    def __init__(self, data: bytes) -> None:
        self._data = data
        self._byte_pos = 0
        self._bit_buf = 0
        self._bits_left = 0
        self._overrun = 0              # zero bits supplied past the end
        self.bits_read = 0
        self.low = 0
        self.high = MAX_RANGE
        self.value = 0
        for _ in range(CODER_BITS):
            self.value = (self.value << 1) | self._read_bit()

    def _read_bit(self) -> int:
        self.bits_read += 1
        if self._bits_left == 0:
            if self._byte_pos < len(self._data):
                self._bit_buf = self._data[self._byte_pos]
                self._byte_pos += 1
                self._bits_left = 8
            else:
                self._overrun += 1
                if self._overrun > DECODER_SLACK_BITS:
                    raise StreamExhaustedError(
                        f"payload exhausted after {len(self._data)} bytes")
                return 0
        self._bits_left -= 1
        return (self._bit_buf >> self._bits_left) & 1

    def decode_symbol(self, cum: CumFreqTable) -> int:
        rng = self.high - self.low + 1
        scaled = ((self.value - self.low + 1) * FREQ_SCALE - 1) // rng
        symbol = int(np.searchsorted(cum, scaled, side="right")) - 1
        # only a corrupt payload can push `value` outside [low, high]
        symbol = min(max(symbol, 0), len(cum) - 2)

        sym_lo = int(cum[symbol])
        sym_hi = int(cum[symbol + 1])
        self.high = self.low + (rng * sym_hi) // FREQ_SCALE - 1
        self.low = self.low + (rng * sym_lo) // FREQ_SCALE

        while True:
            if self.high < HALF:
                self.low <<= 1
                self.high = (self.high << 1) | 1
                self.value = (self.value << 1) | self._read_bit()
            elif self.low >= HALF:
                self.low = (self.low - HALF) << 1
                self.high = ((self.high - HALF) << 1) | 1
                self.value = ((self.value - HALF) << 1) | self._read_bit()
            elif self.low >= QUARTER and self.high < THREE_QUARTERS:
                self.low = (self.low - QUARTER) << 1
                self.high = ((self.high - QUARTER) << 1) | 1
                self.value = ((self.value - QUARTER) << 1) | self._read_bit()
            else:
                break
        return symbol

    def check_end(self) -> None:
        """Raise unless the payload is exactly as long as the encoder would have made it.

        Every renormalization shift becomes one encoder bit, finish() adds two
        and pads to a byte, so the length is fixed by the shifts decoded.
        """
        shifts = self.bits_read - CODER_BITS
        expected = (shifts + 2 + 7) // 8
        if len(self._data) != expected:
            raise CorruptStreamError(
                f"payload is {len(self._data)} bytes, the decoded stream ends after {expected}")
