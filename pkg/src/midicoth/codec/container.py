# src/midicoth/codec/container.py
from __future__ import annotations

import struct
from dataclasses import dataclass

from ..config import FORMAT_VERSION, HEADER_SIZE, MAGIC, PipelineConfig
from ..errors import ContainerFormatError

# magic(4) | version(1) | flags(1) | original length (u64, little-endian)
_HEADER = struct.Struct("<4sBBQ")
assert _HEADER.size == HEADER_SIZE

_RESERVED_FLAG_BITS = 0xC0


@dataclass(frozen=True)
class Container:
    config: PipelineConfig
    original_length: int
    payload: bytes

    def to_bytes(self) -> bytes:
        header = _HEADER.pack(MAGIC, FORMAT_VERSION, self.config.to_flags(), self.original_length)
        return header + self.payload

    @classmethod
    def from_bytes(cls, blob: bytes) -> "Container":
        if len(blob) < HEADER_SIZE:
            raise ContainerFormatError(f"short header: {len(blob)} bytes, need {HEADER_SIZE}")
        magic, version, flags, length = _HEADER.unpack_from(blob)
        if magic != MAGIC:
            raise ContainerFormatError(f"bad magic {magic!r}")
        if version != FORMAT_VERSION:
            raise ContainerFormatError(f"unsupported format version {version}")
        if flags & _RESERVED_FLAG_BITS:
            raise ContainerFormatError(f"reserved flag bits set: 0x{flags:02x}")
        return cls(PipelineConfig.from_flags(flags), length, bytes(blob[HEADER_SIZE:]))

    def __len__(self) -> int:
        return HEADER_SIZE + len(self.payload)
