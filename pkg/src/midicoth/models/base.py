# src/midicoth/models/base.py
from typing import Any

from ..core.distribution import Distribution

# Bytes coded so far; every model reads it, none keeps a private copy
# except the match model, which needs random access for its positions.
History = Any  # bytes | bytearray


class BlendLayer:
    """Interface of the layers that sit between PPM and the denoiser (match, word, high-order)."""

    def name(self) -> str:
        # Short layer label used in logs and reports (e.g. "match")
        raise NotImplementedError

    def blend(self, d: Distribution, history: History) -> Distribution:
        """
        Mix this layer's own prediction into the upstream distribution `d`.

        Returns `d` unchanged (same object) when the layer has nothing to say.
        """
        raise NotImplementedError

    def update(self, history: History, observed: int) -> None:
        """Learn from the byte that was just coded. `history` excludes it."""
        raise NotImplementedError

    def digest_into(self, h) -> None:
        # Feed the full model state into a hashlib object (encoder/decoder equivalence checks)
        raise NotImplementedError
